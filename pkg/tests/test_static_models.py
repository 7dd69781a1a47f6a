"""Static robust flow models: frozen optima, evaluator agreement, edge cases."""

import pytest

from robustflow import (
    InfeasibleFlowError,
    StaticFlow,
    build_am_lp,
    build_gamma1_compact_lp,
    build_gm_lp,
    build_pm_lp,
    decompose_gamma1_solution,
    enumerate_subpaths,
    evaluate_static,
    extract_gamma1_solution,
    gen_bottleneck,
    gen_fan,
    gen_random,
    gen_two_hop,
    nominal_max_flow,
    prune_low_indegree,
    rat,
    solve_lp,
    solve_static,
)


@pytest.fixture(scope="module")
def two_hop():
    net = gen_two_hop()
    return net, enumerate_subpaths(net)


def test_two_hop_all_models(two_hop):
    net, catalog = two_hop
    expectations = {"pm": rat(3, 2), "am": rat(4, 3), "gm": rat(2), "gm1": rat(2)}
    for model, expected in expectations.items():
        flow, report = solve_static(net, model, 1, catalog=catalog)
        assert report.robust_value == expected, model
    assert nominal_max_flow(net)[0] == 3


def test_two_hop_pm_report_details(two_hop):
    net, catalog = two_hop
    _, report = solve_static(net, "pm", 1, catalog=catalog)
    assert report.robust_value == rat(3, 2)
    assert report.nominal_value == 3
    assert report.worst_loss == rat(3, 2)
    assert set(report.worst_scenarios) == {("a1",), ("a2",)}
    # Budget-1 worst loss equals the largest single-arc exposure.
    assert max(report.per_arc_exposure.values()) == report.worst_loss


def test_solve_reports_come_from_independent_evaluation(two_hop):
    net, catalog = two_hop
    for model in ("pm", "am", "gm"):
        flow, report = solve_static(net, model, 1, catalog=catalog)
        again = evaluate_static(flow, net, catalog, 1)
        assert again.robust_value == report.robust_value
        assert again.nominal_value == report.nominal_value
        assert again.worst_scenarios == report.worst_scenarios


def test_gamma_zero_is_nominal(two_hop):
    net, catalog = two_hop
    value = nominal_max_flow(net)[0]
    for model in ("pm", "am", "gm"):
        _, report = solve_static(net, model, 0, catalog=catalog)
        assert report.robust_value == value == report.nominal_value


def test_large_gamma_kills_everything(two_hop):
    net, catalog = two_hop
    for model in ("pm", "am", "gm"):
        _, report = solve_static(net, model, len(net.arcs), catalog=catalog)
        assert report.robust_value == 0


def test_fan_spot_check():
    net = gen_fan(2)
    catalog = enumerate_subpaths(net)
    assert solve_static(net, "pm", 2, catalog=catalog)[1].robust_value == 1
    assert solve_static(net, "gm", 2, catalog=catalog)[1].robust_value == 1
    assert solve_static(net, "am", 2)[1].robust_value == 0


def test_bottleneck_spot_check():
    net = gen_bottleneck(1, 3)  # eta = 6
    catalog = enumerate_subpaths(net)
    assert solve_static(net, "am", 1)[1].robust_value == 5  # eta - gamma
    assert solve_static(net, "gm", 1, catalog=catalog)[1].robust_value == 5
    assert solve_static(net, "pm", 1, catalog=catalog)[1].robust_value == 3  # eta / 2


def test_full_scenario_families_match_restricted():
    for seed in (3, 5):
        net = gen_random("dag", 5, 8, max_cap=3, seed=seed)
        catalog = enumerate_subpaths(net)
        for gamma in (1, 2):
            for build_fn, needs_catalog in (
                (build_pm_lp, True),
                (build_am_lp, False),
                (build_gm_lp, True),
            ):
                args = (net, catalog, gamma) if needs_catalog else (net, gamma)
                restricted = solve_lp(build_fn(*args).lp)
                full = solve_lp(build_fn(*args, full_lambda=True).lp)
                assert restricted.objective_value == full.objective_value


def test_gamma1_compact_matches_and_decomposes(two_hop):
    net, catalog = two_hop
    build = build_gamma1_compact_lp(net)
    sol = solve_lp(build.lp)
    assert sol.status == "optimal"
    compact = extract_gamma1_solution(build, sol.values)
    assert compact.objective == 2
    flow = decompose_gamma1_solution(compact, net, catalog)
    assert flow.kind == "subpath"
    report = evaluate_static(flow, net, catalog, 1)
    assert report.robust_value == 2


def test_lexicographic_gm_restores_nominal(two_hop):
    net, catalog = two_hop
    _, plain = solve_static(net, "gm", 1, catalog=catalog)
    _, lex = solve_static(net, "gm", 1, maximize_nominal=True, catalog=catalog)
    assert lex.robust_value == plain.robust_value == 2
    assert lex.nominal_value == 3  # the unique robust optimum already ships f*


def test_evaluate_rejects_infeasible_flows(two_hop):
    net, catalog = two_hop
    over_capacity = StaticFlow("path", {0: rat(7, 2)})
    with pytest.raises(InfeasibleFlowError) as err:
        evaluate_static(over_capacity, net, catalog, 1)
    assert any(v.constraint == "capacity" for v in err.value.violations)
    negative = StaticFlow("path", {0: rat(-1)})
    with pytest.raises(InfeasibleFlowError):
        evaluate_static(negative, net, catalog, 1)


def test_evaluate_rejects_conservation_violation(two_hop):
    net, catalog = two_hop
    # Arc flow 1 on a1 (s->v) with nothing leaving v violates nothing (excess
    # is allowed to vanish only at interior nodes per robust conservation
    # inflow >= outflow), but outflow without inflow must be rejected.
    bad = StaticFlow("arc", {"a3": rat(1)})
    with pytest.raises(InfeasibleFlowError) as err:
        evaluate_static(bad, net, None, 1)
    assert any(v.constraint == "conservation" for v in err.value.violations)


def test_prune_low_indegree_zeroes_dead_subpaths():
    # Interior node with indegree 1 <= gamma: flow through it is worthless.
    net = gen_fan(1)
    catalog = enumerate_subpaths(net)
    flow, report = solve_static(net, "gm", 1, catalog=catalog)
    pruned = prune_low_indegree(flow, net, catalog, 1)
    again = evaluate_static(pruned, net, catalog, 1)
    assert again.robust_value == report.robust_value
    ends = {catalog.subpaths[idx].end for idx, v in pruned.values.items() if v > 0}
    for v in ends:
        if v not in (net.source, net.sink):
            assert len(net.in_arcs(v)) > 1


def test_unknown_model_rejected(two_hop):
    net, catalog = two_hop
    with pytest.raises(Exception):
        solve_static(net, "nope", 1, catalog=catalog)
