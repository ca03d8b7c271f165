import json

import pytest

from srginv.catalog import cycle_graph, petersen_graph
from srginv.graph import Graph, SrgParams, check_srg
from srginv.isomorphism import are_isomorphic, random_relabel
from srginv.matpow import DEFAULT_MODULUS
from srginv.pipeline import (
    DatasetError,
    LadderConfig,
    LadderStage,
    StageKind,
    compare_pair,
    dataset_report,
    default_ladder,
    distinguish_family,
    group_families,
    load_dataset,
    load_dataset_text,
)
from srginv.vertexinv import InvariantMode

from helpers import er_graph, fixture_graphs

FX = fixture_graphs()


def cube_graph() -> Graph:
    return Graph.from_edges(
        8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
            (0, 4), (1, 5), (2, 6), (3, 7)]
    )


def wagner_graph() -> Graph:
    return Graph.from_edges(
        8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    )


def test_default_ladder_shape():
    ladder = default_ladder()
    assert len(ladder.stages) == 17
    kinds = [s.kind for s in ladder.stages]
    assert kinds[:7] == [StageKind.VERTEX] * 7
    assert kinds[7:14] == [StageKind.VERTEX] * 7
    assert kinds[14] == StageKind.VERTEX_OUTBLOCK
    assert kinds[15:] == [StageKind.EDGE] * 2
    assert ladder.stages[0].powers == (3,)
    assert ladder.stages[6].powers == tuple(range(3, 10))
    assert ladder.stages[7].mode is InvariantMode.SORTED_DIAG
    assert ladder.stages[15].powers == (2, 3, 4, 5)
    assert ladder.vertex_powers() == tuple(range(3, 10))


def test_stage_validation():
    with pytest.raises(ValueError, match=">= 2"):
        LadderStage(StageKind.EDGE, InvariantMode.TRACE, (1, 2))
    with pytest.raises(ValueError, match="ascending"):
        LadderStage(StageKind.VERTEX, InvariantMode.TRACE, (3, 3))
    with pytest.raises(ValueError, match="nonempty"):
        LadderStage(StageKind.VERTEX, InvariantMode.TRACE, ())
    with pytest.raises(ValueError):
        LadderConfig(())


def test_ladder_json_roundtrip():
    ladder = default_ladder()
    again = LadderConfig.from_json(json.dumps(ladder.to_json_obj()))
    assert again == ladder


def test_family_rook_shrikhande():
    report = distinguish_family(
        [FX["rook4"], FX["shrikhande"]], params=SrgParams(16, 6, 2, 2)
    )
    assert report.count == 2
    assert report.distinguished
    assert len(report.stages) == 1  # early exit at the first trace stage
    assert report.stages[0].classes == 2
    assert report.stages[0].powers == (3,)
    assert report.unresolved_pairs == []
    assert report.pairs_requiring_edge == 0
    # both graphs are vertex-transitive: single-block everywhere
    assert report.single_block_graphs == 2
    assert report.family == "16-6-2-2"


def test_family_relabeled_pair_exhausts_ladder():
    g = FX["petersen"]
    h, _ = random_relabel(g, 5)
    report = distinguish_family([g, h], params=SrgParams(10, 3, 0, 1))
    assert not report.distinguished
    assert len(report.stages) == 17
    assert report.final_classes == 1
    assert report.unresolved_pairs == [(0, 1)]
    assert report.pairs_requiring_edge == 1
    assert report.shared_vertex_invariant_graphs == 2
    assert all(r.classes == 1 for r in report.stages)


def test_family_cube_wagner_needs_edge_stage():
    report = distinguish_family([cube_graph(), wagner_graph()])
    assert report.distinguished
    # all 15 vertex stages fail, the first edge stage separates
    assert len(report.stages) == 16
    assert [r.classes for r in report.stages] == [1] * 15 + [2]
    assert report.stages[-1].kind is StageKind.EDGE
    assert report.pairs_requiring_edge == 1
    assert report.shared_vertex_invariant_graphs == 2
    assert report.single_block_graphs == 2


def test_family_chang_graphs_28_12_6_4():
    # T(8) and its three switches form the full 28-12-6-4 family: four
    # graphs, all split by the first trace stage, one of them (T(8),
    # vertex-transitive) with a single-block vertex partition
    from srginv.catalog import chang_graphs, triangular_graph

    t8 = triangular_graph(8)
    family = [t8, *chang_graphs()]
    params = SrgParams(28, 12, 6, 4)
    for g in family:
        assert check_srg(g) == params
    for i in range(4):
        for j in range(i + 1, 4):
            assert are_isomorphic(family[i], family[j]).status == "non-isomorphic"
    report = distinguish_family(family, params=params)
    assert report.distinguished
    assert len(report.stages) == 1
    assert report.stages[0].classes == 4
    assert report.stages[0].powers == (3,)
    assert report.single_block_graphs == 1


def test_family_complement_pair_16_9_4_6():
    from srginv.catalog import complement_graph

    cr = complement_graph(FX["rook4"])
    cs = complement_graph(FX["shrikhande"])
    params = SrgParams(16, 9, 4, 6)
    assert check_srg(cr) == params and check_srg(cs) == params
    report = distinguish_family([cr, cs], params=params)
    assert report.distinguished
    assert report.stages[0].classes == 2 and report.stages[0].powers == (3,)
    assert report.single_block_graphs == 2


def test_seidel_switch_involution():
    from srginv.catalog import seidel_switch

    g = FX["petersen"]
    subset = (0, 2, 5)
    assert seidel_switch(seidel_switch(g, subset), subset) == g


def test_family_class_counts_monotone():
    graphs = [er_graph(8, s) for s in range(6)]
    report = distinguish_family(graphs, early_exit=False)
    counts = [r.classes for r in report.stages]
    assert counts == sorted(counts)
    assert report.final_classes >= 1


def test_early_exit_equivalence():
    pairs = [
        [FX["rook4"], FX["shrikhande"]],
        [cube_graph(), wagner_graph()],
        [er_graph(8, s) for s in range(5)],
    ]
    for graphs in pairs:
        fast = distinguish_family(graphs, early_exit=True)
        slow = distinguish_family(graphs, early_exit=False)
        assert fast.final_classes == slow.final_classes
        assert fast.unresolved_pairs == slow.unresolved_pairs
        prefix = len(fast.stages)
        assert [r.classes for r in slow.stages[:prefix]] == [
            r.classes for r in fast.stages
        ]


def test_family_needs_two_graphs():
    with pytest.raises(ValueError):
        distinguish_family([FX["rook4"]])


def test_compare_pair_examples():
    v = compare_pair(FX["rook4"], FX["shrikhande"])
    assert v.distinguished and v.stage == 1
    assert "stage 1" in v.describe()

    g = FX["paley13"]
    h, _ = random_relabel(g, 9)
    v = compare_pair(g, h)
    assert not v.distinguished
    assert v.describe() == "indistinguishable by ladder"

    v = compare_pair(FX["k33"], FX["prism"])
    assert v.distinguished and v.stage == 2  # trace p<=4 splits, p=3 does not

    v = compare_pair(cube_graph(), wagner_graph())
    assert v.distinguished
    assert v.stage_config.kind is StageKind.EDGE


def test_compare_pair_checks_vertex_count():
    with pytest.raises(ValueError):
        compare_pair(FX["petersen"], FX["c5"])


def test_compare_never_splits_isomorphic_pairs():
    for name in ("rook4", "shrikhande", "petersen", "prism", "paley13"):
        g = FX[name]
        for seed in range(8):
            h, _ = random_relabel(g, seed)
            assert not compare_pair(g, h).distinguished


def test_ladder_verdicts_agree_with_oracle():
    fx = fixture_graphs()
    names = sorted(fx)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            g, h = fx[a], fx[b]
            if g.v != h.v or g.v > 16:
                continue
            degs = sorted(g.rows[x].bit_count() for x in range(g.v))
            if degs != sorted(h.rows[x].bit_count() for x in range(h.v)):
                continue
            if compare_pair(g, h).distinguished:
                assert are_isomorphic(g, h).status == "non-isomorphic", (a, b)


def test_group_families_orders_by_params():
    entries = [
        (FX["rook4"], SrgParams(16, 6, 2, 2)),
        (FX["petersen"], SrgParams(10, 3, 0, 1)),
        (FX["shrikhande"], SrgParams(16, 6, 2, 2)),
    ]
    fams = group_families(entries)
    assert [f.key for f in fams] == ["10-3-0-1", "16-6-2-2"]
    assert len(fams[1].graphs) == 2


def test_load_dataset_text_and_grouping():
    text = FX["rook4"].to_graph6() + "\n" + FX["shrikhande"].to_graph6() + "\n"
    entries = load_dataset_text(text)
    assert len(entries) == 2
    assert all(p == SrgParams(16, 6, 2, 2) for _, p in entries)


def test_load_dataset_rejects_non_srg():
    text = FX["petersen"].to_graph6() + "\n" + cycle_graph(6).to_graph6() + "\n"
    with pytest.raises(DatasetError, match="graph 1"):
        load_dataset_text(text)
    entries = load_dataset_text(text, allow_non_srg=True)
    assert entries[1][1] is None


def test_load_dataset_empty_input():
    assert load_dataset_text("") == []


def test_load_dataset_files(tmp_path):
    f1 = tmp_path / "fam.g6"
    f1.write_text(FX["rook4"].to_graph6() + "\n" + FX["shrikhande"].to_graph6() + "\n")
    f2 = tmp_path / "single.g6"
    f2.write_text(petersen_graph().to_graph6() + "\n")
    entries = load_dataset([tmp_path])
    assert len(entries) == 3
    with pytest.raises(DatasetError):
        load_dataset([tmp_path / "missing.g6"])


def test_dataset_report_fixture_families():
    entries = load_dataset_text(
        "\n".join(
            [
                FX["rook4"].to_graph6(),
                FX["shrikhande"].to_graph6(),
                FX["petersen"].to_graph6(),
            ]
        )
    )
    report = dataset_report(entries)
    totals = report.totals
    assert totals["graphs"] == 3
    assert totals["families"] == 2
    assert totals["unresolved_pairs"] == 0
    assert totals["distinguished_all"] is True
    assert totals["single_block_graphs"] == 3  # all three are vertex-transitive
    obj = report.to_json_obj()
    assert {f["params"] for f in obj["families"]} == {"16-6-2-2", "10-3-0-1"}
    for fam in obj["families"]:
        assert set(fam) >= {
            "params",
            "count",
            "stages",
            "unresolved_pairs",
            "single_block_graphs",
        }
        for st in fam["stages"]:
            assert set(st) >= {"kind", "mode", "powers", "classes"}
    text = report.to_text()
    assert "16-6-2-2" in text and "10-3-0-1" in text


def test_dataset_report_deterministic_and_parallel_identical():
    entries = load_dataset_text(
        "\n".join(
            [
                FX["rook4"].to_graph6(),
                FX["shrikhande"].to_graph6(),
                FX["petersen"].to_graph6(),
                FX["paley13"].to_graph6(),
            ]
        )
    )
    a = dataset_report(entries).to_json()
    b = dataset_report(entries).to_json()
    c = dataset_report(entries, jobs=2).to_json()
    assert a == b == c


def test_dataset_report_unresolved_pair_counts():
    g = FX["t5"]
    h, _ = random_relabel(g, 77)
    entries = load_dataset_text(g.to_graph6() + "\n" + h.to_graph6())
    report = dataset_report(entries)
    assert report.totals["unresolved_pairs"] == 1
    assert report.totals["distinguished_all"] is False
    assert report.families[0].unresolved_pairs == [(0, 1)]


def test_non_srg_family_with_allow_flag():
    g1, g2 = er_graph(8, 1), er_graph(8, 2)
    entries = load_dataset_text(
        g1.to_graph6() + "\n" + g2.to_graph6(), allow_non_srg=True
    )
    report = dataset_report(entries)
    assert report.families[0].family == "8-nonsrg"
    assert report.totals["graphs"] == 2


def test_single_graph_family_report():
    entries = load_dataset_text(FX["petersen"].to_graph6())
    report = dataset_report(entries)
    fam = report.families[0]
    assert fam.count == 1 and fam.distinguished
    assert fam.stages == []
    assert fam.single_block_graphs == 1


def test_modular_mode_report():
    entries = load_dataset_text(
        FX["rook4"].to_graph6() + "\n" + FX["shrikhande"].to_graph6()
    )
    report = dataset_report(entries, modulus=DEFAULT_MODULUS)
    assert report.totals["distinguished_all"] is True
    assert report.to_json_obj()["arithmetic"] == "mod-reduced"


def test_custom_edge_only_ladder():
    ladder = LadderConfig(
        (LadderStage(StageKind.EDGE, InvariantMode.TRACE, (2, 3, 4, 5)),)
    )
    # edge invariants alone do not separate rook from Shrikhande at p <= 5
    v = compare_pair(FX["rook4"], FX["shrikhande"], ladder)
    assert not v.distinguished
    # but they do separate cube from Wagner
    v = compare_pair(cube_graph(), wagner_graph(), ladder)
    assert v.distinguished and v.stage == 1


def test_text_report_marks_complete_families():
    entries = load_dataset_text(
        FX["rook4"].to_graph6() + "\n" + FX["shrikhande"].to_graph6()
    )
    text = dataset_report(entries).to_text()
    assert "2*" in text
    full = dataset_report(entries).to_text(show_all=True)
    assert len(full) >= len(text)
