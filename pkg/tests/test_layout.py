import pytest

from hhlprep import CapacityError, LayoutError, RegisterLayout


class TestInvariants:
    def test_minimal_layout(self):
        lay = RegisterLayout(1, 1)
        assert lay.total == 3
        assert lay.dim == 8

    def test_flag_adds_a_qubit(self):
        assert RegisterLayout(2, 3).total == 6
        assert RegisterLayout(2, 3, has_flag=True).total == 7

    def test_requires_target_and_clock(self):
        with pytest.raises(LayoutError):
            RegisterLayout(0, 1)
        with pytest.raises(LayoutError):
            RegisterLayout(1, 0)

    def test_cap_enforced(self):
        with pytest.raises(CapacityError):
            RegisterLayout(20, 10)
        RegisterLayout(20, 10, qubit_cap=31)  # configurable

    def test_default_cap_boundary(self):
        RegisterLayout(15, 10)  # 26 qubits exactly
        with pytest.raises(CapacityError):
            RegisterLayout(16, 10)


class TestBitOrder:
    def test_qubit_positions(self):
        lay = RegisterLayout(2, 3, has_flag=True)
        assert list(lay.target_qubits) == [0, 1]
        assert lay.flag_qubit == 2
        assert list(lay.clock_qubits) == [3, 4, 5]
        assert lay.ancilla_qubit == 6

    def test_no_flag_qubit_raises(self):
        with pytest.raises(LayoutError):
            _ = RegisterLayout(2, 3).flag_qubit

    def test_index_round_trip(self):
        lay = RegisterLayout(2, 2, has_flag=True)
        for target in range(4):
            for clock in range(4):
                for flag in (0, 1):
                    for anc in (0, 1):
                        idx = lay.index_of(target, clock, anc, flag=flag)
                        assert lay.target_of(idx) == target
                        assert lay.clock_of(idx) == clock
                        assert lay.flag_of(idx) == flag
                        assert lay.ancilla_of(idx) == anc

    def test_target_is_least_significant(self):
        lay = RegisterLayout(2, 2)
        assert lay.index_of(3, 0, 0) == 3
        assert lay.index_of(0, 1, 0) == 4
        assert lay.index_of(0, 0, 1) == 16

    def test_index_of_range_checks(self):
        lay = RegisterLayout(2, 2)
        with pytest.raises(LayoutError):
            lay.index_of(4, 0, 0)
        with pytest.raises(LayoutError):
            lay.index_of(0, 4, 0)
        with pytest.raises(LayoutError):
            lay.index_of(0, 0, 0, flag=1)
