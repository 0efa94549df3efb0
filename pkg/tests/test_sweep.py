from klmatch import CoxeterMatrix, INFINITY
from klmatch.sweep import SweepConfig, coxeter_matrices, enumeration_oracle_sweep, run_sweep

A3_ONLY = [CoxeterMatrix.type_a(3)]


def test_matrix_classes():
    mats = coxeter_matrices(3)
    assert [m.rank for m in mats].count(1) == 1
    assert [m.rank for m in mats].count(2) == 5
    # 5 labels on 3 edges up to the 6 relabellings of the triangle: C(5+2, 3) = 35 multisets
    assert [m.rank for m in mats].count(3) == 35
    assert any(INFINITY in sum(m.labels, ()) for m in mats)


def test_small_sweep_passes():
    rep = run_sweep(SweepConfig(matrices=A3_ONLY, max_length=4, corrected_d0=True))
    assert rep.ok, rep.failures[:3]
    assert rep.counts["calculating checks"] > 0
    assert rep.counts["pipeline entries"] > 0
    assert rep.counts["P checks"] > 0
    assert rep.counts["relabelled tables"] > 0


def test_cap_one_sweep_is_vacuous():
    rep = run_sweep(SweepConfig(matrices=A3_ONLY, max_length=4, cap=1))
    assert rep.ok
    assert rep.counts["calculating checks"] == 0
    assert rep.counts["skipped (cap)"] > 0


def test_injected_fault_is_detected():
    rep = run_sweep(SweepConfig(matrices=A3_ONLY, max_length=4, inject_fault=True, checks=("calculating",)))
    assert not rep.ok
    assert {f["check"] for f in rep.failures} == {"calculating"}


def test_printed_chain_d0_fails_only_in_the_longest_subcase():
    cfg = SweepConfig(matrices=A3_ONLY, max_length=5, checks=("fast-path",))
    rep = run_sweep(cfg)
    assert {f["case"] for f in rep.failures} == {"chain D0 (longest)"}
    cfg.corrected_d0 = True
    assert run_sweep(cfg).ok


def test_enumeration_oracle_small():
    rep = enumeration_oracle_sweep(max_vertices=30, max_length=5, matrices=A3_ONLY + [CoxeterMatrix.type_b(3)])
    assert rep.ok and rep.counts["intervals"] > 20


def test_summary_lines():
    rep = run_sweep(SweepConfig(matrices=[CoxeterMatrix.from_dihedral(3)], max_length=3))
    lines = rep.summary()
    assert lines[-1] == "failures: 0"
    assert any(line.startswith("systems: 1") for line in lines)
