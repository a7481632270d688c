#include <doctest.h>

#include <cmath>

#include "core/base_matrix.hpp"
#include "core/errors.hpp"
#include "core/jfunction.hpp"
#include "core/pattern.hpp"
#include "core/pexit.hpp"

using namespace ldpc;

namespace {

BaseMatrix matrix_11n_r12() { return BaseMatrix::load_file(LDPC_DATA_DIR "/11n_z81_r12.bm"); }

} // namespace

TEST_CASE("channel MI: punctured columns carry none") {
    for (double ebno : {-10.0, 0.0, 10.0, 40.0}) CHECK(channel_mi(ebno, 0.5, true) == 0.0);
}

TEST_CASE("channel MI approaches 1 at high E_b/N_0") {
    CHECK(channel_mi(40.0, 0.5, false) >= 1.0 - 1e-6);
}

TEST_CASE("channel MI at 0 dB, rate 1/2 is J(2)") {
    // sigma_ch^2 = 8 * 0.5 * 10^0 = 4
    CHECK(channel_mi(0.0, 0.5, false) == j_function(2.0));
}

TEST_CASE("convergence above and divergence below the known threshold") {
    BaseMatrix bm = matrix_11n_r12();
    ThresholdQuery q;
    q.matrix = &bm;
    q.rate = {1, 2};
    CHECK(pexit_converges(q, 1.0).converged);
    CHECK_FALSE(pexit_converges(q, 0.3).converged);
}

TEST_CASE("convergence is monotone in E_b/N_0") {
    BaseMatrix bm = matrix_11n_r12();
    ThresholdQuery q;
    q.matrix = &bm;
    q.rate = {1, 2};
    bool seen = false;
    for (double ebno = 0.0; ebno <= 3.01; ebno += 0.25) {
        bool c = pexit_converges(q, ebno).converged;
        if (seen) CHECK(c); // once convergent, stays convergent
        seen = seen || c;
    }
    CHECK(seen);
}

TEST_CASE("a single punctured degree-1 column blocks convergence at operating E_b/N_0") {
    // Its only check can in principle resolve it once every other neighbor is
    // near-perfect, but that happens far above any operating point; below
    // that the recursion freezes with the column's MI far from 1.
    BaseMatrix bm = BaseMatrix::parse("3 2 4\n0 0 -1\n-1 0 0\n");
    ThresholdQuery q;
    q.matrix = &bm;
    q.punctured_cols = {3};
    q.rate = {1, 2};
    for (double ebno : {0.0, 2.0, 4.0, 6.0, 8.0}) CHECK_FALSE(pexit_converges(q, ebno).converged);
}

TEST_CASE("a punctured column pair pinned by a shared degree-1 check never converges") {
    // Columns 4 and 5 hang off check 1 only; puncturing both starves that
    // check, so their MI stays at zero no matter the channel quality.
    BaseMatrix bm = BaseMatrix::parse("5 3 2\n0 -1 -1 0 0\n0 0 0 -1 -1\n0 0 0 -1 -1\n");
    ThresholdQuery q;
    q.matrix = &bm;
    q.punctured_cols = {4, 5};
    q.rate = {2, 3}; // (k-0)/(n-0-2)
    for (double ebno : {0.0, 4.0, 8.0, 12.0}) CHECK_FALSE(pexit_converges(q, ebno).converged);
    ThresholdResult r = find_threshold(q);
    CHECK(r.status == ThresholdStatus::NoConvergenceAtUpper);
    CHECK(std::isinf(r.threshold_db));
}

TEST_CASE("unpruned 11n rate-1/2 threshold matches the published value") {
    ThresholdResult r = threshold_for_pattern(matrix_11n_r12(), {});
    REQUIRE(r.status == ThresholdStatus::Converged);
    CHECK(r.threshold_db == doctest::Approx(0.626).epsilon(0.08)); // +-0.05 dB
    CHECK(r.iterations > 0);
}

TEST_CASE("threshold is deterministic") {
    BaseMatrix bm = matrix_11n_r12();
    ThresholdResult a = threshold_for_pattern(bm, {{1}, {5}});
    ThresholdResult b = threshold_for_pattern(bm, {{1}, {5}});
    CHECK(a.threshold_db == b.threshold_db);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("threshold depends only on the support, not the shift values") {
    BaseMatrix a = matrix_11n_r12();
    // Same support, different non-negative shifts.
    std::vector<int> entries;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            int h = a.at(i, j);
            entries.push_back(h < 0 ? -1 : (h * 7 + 3) % 81);
        }
    BaseMatrix b(a.cols(), a.rows(), a.lift(), entries);
    REQUIRE(b.same_support(a));
    PruningPattern pattern{{1, 2}, {5, 9}};
    ThresholdResult ra = threshold_for_pattern(a, pattern);
    ThresholdResult rb = threshold_for_pattern(b, pattern);
    CHECK(ra.threshold_db == rb.threshold_db);
}

TEST_CASE("erasing a column equals pinning its channel MI to 1") {
    // Small matrices where column 2 is erasable.
    for (const char* text :
         {"4 2 4\n0 1 2 -1\n3 0 -1 1\n", "5 2 3\n0 1 -1 2 0\n1 0 2 -1 0\n",
          "5 3 2\n0 1 -1 0 -1\n1 -1 0 -1 0\n-1 0 1 1 -1\n"}) {
        BaseMatrix bm = BaseMatrix::parse(text);
        Rational rate{bm.info_cols() - 1, bm.cols() - 1};

        ThresholdQuery erased;
        BaseMatrix sub = bm.erase_columns({2});
        erased.matrix = &sub;
        erased.rate = rate;
        ThresholdResult re = find_threshold(erased);

        ThresholdQuery pinned;
        pinned.matrix = &bm;
        pinned.pinned_cols = {2};
        pinned.rate = rate;
        ThresholdResult rp = find_threshold(pinned);

        CHECK(re.status == rp.status);
        if (re.status == ThresholdStatus::Converged)
            CHECK(std::abs(re.threshold_db - rp.threshold_db) <= 0.002);
    }
}

TEST_CASE("bracket edge cases") {
    BaseMatrix bm = matrix_11n_r12();
    ThresholdQuery q;
    q.matrix = &bm;
    q.rate = {1, 2};

    SUBCASE("upper bound too low reports no convergence") {
        q.options.bracket_hi_db = 0.0; // threshold is ~0.6
        ThresholdResult r = find_threshold(q);
        CHECK(r.status == ThresholdStatus::NoConvergenceAtUpper);
        CHECK(std::isinf(r.threshold_db));
    }
    SUBCASE("lower bound above the transition is flagged") {
        q.options.bracket_lo_db = 2.0;
        ThresholdResult r = find_threshold(q);
        CHECK(r.status == ThresholdStatus::ConvergesAtLower);
    }
}

TEST_CASE("query validation") {
    BaseMatrix bm = matrix_11n_r12();
    ThresholdQuery q;
    CHECK_THROWS_AS(find_threshold(q), Error); // no matrix
    q.matrix = &bm;
    q.rate = {1, 1};
    CHECK_THROWS_AS(find_threshold(q), Error); // rate not in (0,1)
    q.rate = {0, 2};
    CHECK_THROWS_AS(find_threshold(q), Error);
    q.rate = {1, 2};
    q.punctured_cols = {99};
    CHECK_THROWS_AS(find_threshold(q), Error);
}

TEST_CASE("rate override is honored") {
    BaseMatrix bm = matrix_11n_r12();
    PruningPattern pattern{{}, {24}};
    // pruned rate would be 12/23; forcing 1/2 must give a different threshold
    ThresholdResult pruned = threshold_for_pattern(bm, pattern);
    ThresholdResult forced = threshold_for_pattern(bm, pattern, Rational{1, 2});
    CHECK(pruned.threshold_db != forced.threshold_db);
}
