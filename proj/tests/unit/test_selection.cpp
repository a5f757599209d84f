#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tsko/errors.hpp"
#include "tsko/rng.hpp"
#include "tsko/selection/selection.hpp"

using namespace tsko;
using namespace tsko::selection;

namespace {

// O(p^2) scan: every nonzero |W_j| is tried as t, with both counts taken
// by a fresh pass over W, and the smallest qualifying t wins.
double brute_threshold(const std::vector<double>& W, double q, bool plus) {
    double best = kInfinity;
    for (double wt : W) {
        if (wt == 0.0) {
            continue;
        }
        const double t = std::abs(wt);
        double neg = 0.0;
        double pos = 0.0;
        for (double w : W) {
            neg += (w <= -t) ? 1.0 : 0.0;
            pos += (w >= t) ? 1.0 : 0.0;
        }
        if (((plus ? 1.0 : 0.0) + neg) / std::max(pos, 1.0) <= q && t < best) {
            best = t;
        }
    }
    return best;
}

std::vector<double> random_W(Rng& rng, int kind) {
    std::uniform_int_distribution<int> len(1, 40);
    const int p = len(rng);
    std::vector<double> W(static_cast<std::size_t>(p));
    std::uniform_int_distribution<int> small(-4, 4);
    std::normal_distribution<double> normal(0.5, 2.0);
    for (auto& w : W) {
        switch (kind) {
        case 0: w = small(rng); break;                        // ties and zeros
        case 1: w = normal(rng); break;                       // continuous
        case 2: w = -std::abs(normal(rng)) - 0.01; break;     // all negative
        case 3: w = std::abs(normal(rng)) + 0.01; break;      // all positive
        default: w = small(rng) * 0.5 + (small(rng) > 2 ? normal(rng) : 0.0);
        }
    }
    return W;
}

} // namespace

TEST_CASE("worked example") {
    const std::vector<double> W{3, -1, 2, -2, 5};
    CHECK(knockoff_threshold(W, 0.5) == 2.0);
    CHECK(knockoff_plus_threshold(W, 0.5) == 3.0);
    CHECK(select(W, 2.0) == std::vector<std::size_t>{0, 2, 4});
    CHECK(select(W, 3.0) == std::vector<std::size_t>{0, 4});
    const auto rep = make_selection(W, 0.5, true);
    CHECK(rep.selected == std::vector<std::size_t>{0, 4});
    CHECK(rep.threshold == 3.0);
    CHECK(rep.W == W);
}

TEST_CASE("brute-force oracle agrees exactly on random statistics") {
    Rng rng(20240611);
    std::uniform_real_distribution<double> qdist(0.01, 0.99);
    int cases = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto W = random_W(rng, i % 5);
        const double q = (i % 7 == 0) ? 0.2 : qdist(rng);
        for (bool plus : {false, true}) {
            const double fast = knockoff_threshold(W, q, plus);
            const double slow = brute_threshold(W, q, plus);
            CHECK(fast == slow);
            ++cases;
        }
    }
    CHECK(cases == 2000);
}

TEST_CASE("all positive statistics: threshold is the smallest value") {
    const std::vector<double> W{4.0, 0.5, 2.0, 9.0};
    CHECK(knockoff_threshold(W, 0.1) == 0.5);
    CHECK(select(W, 0.5).size() == 4);
}

TEST_CASE("all negative statistics give an infinite threshold and nothing selected") {
    const std::vector<double> W{-1.0, -3.0, -0.2};
    CHECK(std::isinf(knockoff_threshold(W, 0.5)));
    CHECK(std::isinf(knockoff_plus_threshold(W, 0.5)));
    CHECK(select(W, kInfinity).empty());
}

TEST_CASE("single positive statistic never passes knockoff+") {
    const std::vector<double> W{7.0};
    for (double q : {0.05, 0.5, 0.99}) {
        CHECK(std::isinf(knockoff_plus_threshold(W, q)));
        CHECK(knockoff_threshold(W, q) == 7.0);
    }
}

TEST_CASE("enough positives and no negatives: knockoff+ takes the smallest") {
    // q = 0.2 needs at least 1/q = 5 positives with numerator 1.
    const std::vector<double> W{10, 11, 12, 13, 14, 0.0};
    CHECK(knockoff_plus_threshold(W, 0.2) == 10.0);
    const std::vector<double> four{10, 11, 12, 13};
    CHECK(std::isinf(knockoff_plus_threshold(four, 0.2)));
}

TEST_CASE("empty and all-zero statistics select nothing") {
    const std::vector<double> none;
    CHECK(std::isinf(knockoff_threshold(none, 0.2)));
    const std::vector<double> zeros(5, 0.0);
    CHECK(std::isinf(knockoff_threshold(zeros, 0.2)));
    CHECK(make_selection(zeros, 0.2, false).selected.empty());
}

TEST_CASE("q outside (0, 1) is rejected") {
    const std::vector<double> W{1, 2};
    for (double q : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
        CHECK_THROWS_AS(knockoff_threshold(W, q), ConfigError);
    }
}

TEST_CASE("NaN statistics are rejected") {
    const std::vector<double> W{1, std::nan(""), 2};
    CHECK_THROWS_AS(knockoff_threshold(W, 0.2), NumericError);
}

TEST_CASE("properties on random statistics") {
    Rng rng(77);
    std::uniform_real_distribution<double> qdist(0.02, 0.98);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int i = 0; i < 500; ++i) {
        auto W = random_W(rng, i % 5);
        const double q1 = qdist(rng);
        const double q2 = qdist(rng);
        const double lo = std::min(q1, q2);
        const double hi = std::max(q1, q2);

        { // knockoff+ is more conservative
            const auto s = make_selection(W, lo, false);
            const auto sp = make_selection(W, lo, true);
            CHECK(sp.threshold >= s.threshold);
            CHECK(std::includes(s.selected.begin(), s.selected.end(), sp.selected.begin(), sp.selected.end()));
        }
        { // scale equivariance
            // Powers of two keep the scaling exact in floating point.
            const double lambda = std::ldexp(1.0, static_cast<int>(scale(rng)) % 9 - 4);
            std::vector<double> scaled = W;
            for (auto& w : scaled) {
                w *= lambda;
            }
            for (bool plus : {false, true}) {
                const auto a = make_selection(W, lo, plus);
                const auto b = make_selection(scaled, lo, plus);
                CHECK(b.threshold == a.threshold * lambda);
                CHECK(b.selected == a.selected);
            }
        }
        { // monotone in q
            for (bool plus : {false, true}) {
                const auto a = make_selection(W, lo, plus);
                const auto b = make_selection(W, hi, plus);
                CHECK(a.threshold >= b.threshold);
                CHECK(std::includes(b.selected.begin(), b.selected.end(), a.selected.begin(), a.selected.end()));
            }
        }
        { // zero statistics are never selected and the threshold is a magnitude
            for (bool plus : {false, true}) {
                const auto s = make_selection(W, hi, plus);
                for (auto j : s.selected) {
                    CHECK(W[j] != 0.0);
                }
                if (!std::isinf(s.threshold)) {
                    CHECK(std::any_of(W.begin(), W.end(),
                                      [&](double w) { return w != 0.0 && std::abs(w) == s.threshold; }));
                }
            }
        }
    }
}

TEST_CASE("evaluate examples") {
    const std::vector<std::size_t> truth{1, 2};
    const auto a = evaluate(std::vector<std::size_t>{1, 2, 3}, truth, 0.2);
    CHECK(a.fdp == doctest::Approx(1.0 / 3.0));
    CHECK(a.tdp == 1.0);
    CHECK(a.true_discoveries == 2);
    CHECK(a.false_discoveries == 1);
    CHECK(a.mfdr_term == doctest::Approx(1.0 / (3.0 + 5.0)));

    const auto empty = evaluate(std::vector<std::size_t>{}, truth, 0.2);
    CHECK(empty.fdp == 0.0);
    CHECK(empty.tdp == 0.0);
    CHECK(empty.mfdr_term == 0.0);

    const auto exact = evaluate(truth, truth, 0.2);
    CHECK(exact.fdp == 0.0);
    CHECK(exact.tdp == 1.0);
}

TEST_CASE("evaluate needs a non-empty truth and a valid q") {
    CHECK_THROWS_AS(evaluate(std::vector<std::size_t>{1}, std::vector<std::size_t>{}, 0.2), DataError);
    CHECK_THROWS_AS(evaluate(std::vector<std::size_t>{1}, std::vector<std::size_t>{1}, 1.0), ConfigError);
}

TEST_CASE("aggregate counts every run") {
    std::vector<std::vector<std::size_t>> runs(200, std::vector<std::size_t>{7});
    const auto r = aggregate_runs(runs, 10);
    CHECK(r.runs == 200);
    CHECK(r.counts[7] == 200);
    CHECK(r.order.front() == 7);
    CHECK(r.total_selections() == 200);
    CHECK(r.histogram.back() == 1);
    CHECK(r.histogram.front() == 9);
}

TEST_CASE("aggregate orders by count and keeps index order on ties") {
    const std::vector<std::vector<std::size_t>> runs{{0, 3, 4}, {3, 4}, {4, 1}, {}};
    const auto r = aggregate_runs(runs, 5, 4);
    CHECK(r.counts == std::vector<std::size_t>{1, 1, 0, 2, 3});
    CHECK(r.order == std::vector<std::size_t>{4, 3, 0, 1, 2});
    CHECK(r.total_selections() == 7);
    std::size_t in_hist = 0;
    for (auto h : r.histogram) {
        in_hist += h;
    }
    CHECK(in_hist == 5);
    for (auto c : r.counts) {
        CHECK(c <= r.runs);
    }
}

TEST_CASE("aggregate rejects empty input and bad indices") {
    CHECK_THROWS_AS(aggregate_runs({}, 3), DataError);
    CHECK_THROWS_AS(aggregate_runs({{5}}, 3), DataError);
    CHECK_THROWS_AS(aggregate_runs({{1}}, 3, 0), ConfigError);
}
