#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracwell/consistency.hpp"
#include "fracwell/report_io.hpp"

using namespace fracwell;

namespace {

ScanSpec small_spec(std::vector<double> alphas, std::vector<double> xs,
                    std::vector<int> ns) {
    ScanSpec s;
    s.alphas = std::move(alphas);
    s.x_tildes = std::move(xs);
    s.ns = std::move(ns);
    return s;
}

} // namespace

TEST_CASE("ScanSpec validation") {
    CHECK_THROWS_AS(small_spec({}, {0.0}, {1}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(small_spec({0.9}, {0.0}, {1}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(small_spec({1.5}, {0.0}, {0}).validate(),
                    std::invalid_argument);
    ScanSpec bad = small_spec({1.5}, {0.0}, {1});
    bad.workers = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(small_spec({1.5}, {0.0}, {1}).validate());
}

TEST_CASE("boundary auto-shift rule") {
    double x = 1.0;
    CHECK(boundary_auto_shift(x));
    CHECK(x == doctest::Approx(1.0 - 1e-4).epsilon(1e-15));
    x = -1.0;
    CHECK(boundary_auto_shift(x));
    CHECK(x == doctest::Approx(-(1.0 - 1e-4)).epsilon(1e-15));
    x = 0.5;
    CHECK_FALSE(boundary_auto_shift(x));
    CHECK(x == 0.5);
}

TEST_CASE("run_scan: single alpha=2 center cell agrees everywhere") {
    ConsistencyReport r = run_scan(small_spec({2.0}, {0.0}, {1}));
    REQUIRE(r.rows.size() == 1);
    const ConsistencyRow& row = r.rows[0];
    CHECK(row.piecewise == 1.0);
    CHECK(std::abs(row.delta_direct_tail) < 1e-8);
    CHECK(std::abs(row.delta_direct_abel) < 1e-8);
    CHECK(std::abs(row.delta_contour) < 1e-8);
    CHECK(row.direct_tail.converged);
    CHECK(row.direct_abel.converged);
    CHECK(row.contour.converged);
}

TEST_CASE("run_scan: alpha=2 exterior point") {
    ConsistencyReport r = run_scan(small_spec({2.0}, {2.0}, {1}));
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].piecewise == 0.0);
    CHECK(std::abs(r.rows[0].delta_direct_tail) < 1e-8);
    CHECK(std::abs(r.rows[0].delta_direct_abel) < 1e-8);
    CHECK(std::abs(r.rows[0].delta_contour) < 1e-8);
}

TEST_CASE("run_scan: fractional cell pins the cross-method identity") {
    ScanSpec s = small_spec({1.5}, {0.5}, {1});
    s.methods = {Method::DirectTail, Method::Contour};
    ConsistencyReport r = run_scan(s);
    REQUIRE(r.rows.size() == 1);
    const ConsistencyRow& row = r.rows[0];
    CHECK(row.direct_tail.present);
    CHECK_FALSE(row.direct_abel.present);
    CHECK(row.contour.present);
    CHECK(std::abs(row.direct_tail.value.real() - row.contour.value.real()) <
          1e-6);
    // the deviation from the piecewise state is data, not an assertion:
    // it equals the branch-cut contribution
    CHECK(row.delta_contour ==
          doctest::Approx(-0.1245111137041382).epsilon(1e-7));
    CHECK(row.contour_cut_only.real() ==
          doctest::Approx(-0.1245111137041382).epsilon(1e-7));
    // residue content equals the piecewise value
    CHECK(row.contour_residue_only.real() ==
          doctest::Approx(row.piecewise).epsilon(1e-11));
}

TEST_CASE("run_scan: row ordering, count, and summary faithfulness") {
    ScanSpec s = small_spec({1.5, 2.0}, {0.5, -0.5, 1.5}, {1, 2});
    s.methods = {Method::Contour};
    ConsistencyReport r = run_scan(s);
    REQUIRE(r.rows.size() == 12);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const auto& a = r.rows[i - 1];
        const auto& b = r.rows[i];
        bool ordered = a.alpha < b.alpha ||
                       (a.alpha == b.alpha &&
                        (a.n < b.n || (a.n == b.n && a.x_tilde < b.x_tilde)));
        CHECK(ordered);
    }
    ScanSummary redone = summarize(r);
    CHECK(redone.per_alpha_method.size() == r.summary.per_alpha_method.size());
    for (auto& [key, st] : redone.per_alpha_method) {
        auto it = r.summary.per_alpha_method.find(key);
        REQUIRE(it != r.summary.per_alpha_method.end());
        CHECK(st.max_abs_delta == it->second.max_abs_delta);
        CHECK(st.median_abs_delta == it->second.median_abs_delta);
        CHECK(st.failures == it->second.failures);
    }
    CHECK(redone.max_cross_method_disagreement ==
          r.summary.max_cross_method_disagreement);
}

TEST_CASE("summarize: singleton report reduces to that row") {
    ScanSpec s = small_spec({1.5}, {0.5}, {1});
    s.methods = {Method::Contour};
    ConsistencyReport r = run_scan(s);
    REQUIRE(r.rows.size() == 1);
    auto key = std::make_pair(1.5, std::string("contour"));
    auto it = r.summary.per_alpha_method.find(key);
    REQUIRE(it != r.summary.per_alpha_method.end());
    CHECK(it->second.max_abs_delta == std::abs(r.rows[0].delta_contour));
    CHECK(it->second.median_abs_delta == std::abs(r.rows[0].delta_contour));
    CHECK(it->second.failures == 0);
    CHECK(it->second.cells == 1);
}

TEST_CASE("run_scan: determinism and worker-count independence") {
    ScanSpec s = small_spec({1.5}, {0.0, 0.5, 1.5}, {1, 2});
    ConsistencyReport a = run_scan(s);
    ConsistencyReport b = run_scan(s);
    ScanSpec sp = s;
    sp.workers = 4;
    ConsistencyReport c = run_scan(sp);
    REQUIRE(a.rows.size() == b.rows.size());
    REQUIRE(a.rows.size() == c.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].direct_tail.value.real() ==
              b.rows[i].direct_tail.value.real());
        CHECK(a.rows[i].direct_tail.value.real() ==
              c.rows[i].direct_tail.value.real());
        CHECK(a.rows[i].direct_abel.value.real() ==
              c.rows[i].direct_abel.value.real());
        CHECK(a.rows[i].contour.value.real() ==
              c.rows[i].contour.value.real());
        CHECK(a.rows[i].delta_contour == c.rows[i].delta_contour);
    }
}

TEST_CASE("run_scan: boundary cell is auto-shifted and annotated") {
    ConsistencyReport r = run_scan(small_spec({1.5}, {1.0}, {1}));
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].x_tilde == doctest::Approx(0.9999));
    CHECK(r.rows[0].annotations.find("shifted_from=1") != std::string::npos);
    CHECK(r.rows[0].contour.converged);
}

TEST_CASE("run_scan: per-cell failure does not poison the scan") {
    ScanSpec s = small_spec({1.5}, {0.5, 0.25}, {1});
    s.tol = ToleranceSpec(1e-8, 1e-8, 60); // starved evaluation budget
    ConsistencyReport r = run_scan(s);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.summary.total_failures > 0);
    for (const auto& row : r.rows) {
        if (!row.direct_tail.converged)
            CHECK(row.annotations.find("direct_tail_unconverged") !=
                  std::string::npos);
    }
    // deltas of failed cells are excluded from the summary stats
    for (auto& [key, st] : r.summary.per_alpha_method)
        CHECK(st.cells >= st.failures);
}

TEST_CASE("deltas recomputed from stored values match stored deltas") {
    ConsistencyReport r = run_scan(small_spec({1.75}, {0.25, 1.5}, {2}));
    for (const auto& row : r.rows) {
        CHECK(row.delta_direct_tail ==
              row.direct_tail.value.real() - row.piecewise);
        CHECK(row.delta_direct_abel ==
              row.direct_abel.value.real() - row.piecewise);
        CHECK(row.delta_contour == row.contour.value.real() - row.piecewise);
        WellConfig cfg = r.spec.base.with_alpha(row.alpha);
        CHECK(row.piecewise ==
              piecewise_state(cfg, StateIndex(row.n), row.x_tilde * cfg.a));
    }
}

TEST_CASE("default grid shape matches the documented scan") {
    ScanSpec s = ScanSpec::default_grid();
    CHECK(s.alphas.size() == 4);
    CHECK(s.x_tildes.size() == 11);
    CHECK(s.ns.size() == 3);
}
