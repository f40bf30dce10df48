#include <doctest.h>

#include "helpers.hpp"
#include "seqssvm/features.hpp"

using namespace seqssvm;
using namespace testutil;

TEST_SUITE("features") {

TEST_CASE("index layout") {
    auto fs = make_space(5, 3);
    const int A = 5, K = 3;
    CHECK(fs->attr_count() == A);
    CHECK(fs->label_count() == K);
    CHECK(fs->dimension() == static_cast<std::size_t>(A * K + K * K + K));
    CHECK(fs->emission_index(2, 1) == static_cast<std::size_t>(2 * K + 1));
    CHECK(fs->transition_index(1, 2) == static_cast<std::size_t>(A * K + 1 * K + 2));
    CHECK(fs->start_index(2) == static_cast<std::size_t>(A * K + K * K + 2));
    // Blocks tile the index range without overlap.
    CHECK(fs->emission_index(A - 1, K - 1) + 1 == fs->transition_index(0, 0));
    CHECK(fs->transition_index(K - 1, K - 1) + 1 == fs->start_index(0));
    CHECK(fs->start_index(K - 1) + 1 == fs->dimension());
}

TEST_CASE("builder collects first-seen attributes; freeze needs labels") {
    FeatureSpace::Builder b;
    b.add(attr_sequence({{1}, {0}, {1}}));
    Alphabet al;
    al.intern("X");
    auto fs = b.freeze(al, false);
    CHECK(fs.attr_names() == std::vector<std::string>{"a1", "a0"});
    CHECK(fs.alphabet().frozen());

    FeatureSpace::Builder empty;
    CHECK_THROWS_AS(empty.freeze(Alphabet{}, false), domain_error);
}

TEST_CASE("unknown attribute handling") {
    auto strict = make_space(2, 2, false);
    CHECK_THROWS_AS(strict->attr_index("never-seen"), domain_error);

    auto open = make_space(2, 2, true);
    CHECK(open->has_unknown());
    CHECK(open->attr_names().front() == FeatureSpace::kUnknownAttr);
    CHECK(open->attr_index("never-seen") == 0);
    CHECK(open->attr_index("a0") == 1);
    CHECK(open->attr_count() == 3);
}

TEST_CASE("joint map single position") {
    auto fs = make_space(3, 2);
    Sequence x = attr_sequence({{0}});
    auto f = joint_feature_map(*fs, x, {1});
    REQUIRE(f.size() == 2);
    CHECK(f.get(static_cast<std::uint32_t>(fs->emission_index(0, 1))) == 1.0);
    CHECK(f.get(static_cast<std::uint32_t>(fs->start_index(1))) == 1.0);
}

TEST_CASE("joint map accumulates over positions") {
    auto fs = make_space(3, 2);
    Sequence x = attr_sequence({{0}, {0}});
    auto f = joint_feature_map(*fs, x, {0, 0});
    CHECK(f.get(static_cast<std::uint32_t>(fs->emission_index(0, 0))) == 2.0);
    CHECK(f.get(static_cast<std::uint32_t>(fs->transition_index(0, 0))) == 1.0);
    CHECK(f.get(static_cast<std::uint32_t>(fs->start_index(0))) == 1.0);
    CHECK(f.size() == 3);
}

TEST_CASE("transition block mass is M-1") {
    Rng rng(3);
    auto fs = make_space(4, 3);
    auto lo = static_cast<std::uint32_t>(fs->transition_index(0, 0));
    auto hi = static_cast<std::uint32_t>(fs->start_index(0));
    for (int trial = 0; trial < 50; ++trial) {
        int M = 1 + rng.index(7);
        Sequence x = random_sequence(4, M, rng);
        LabelSeq y = random_labels(3, M, rng);
        auto f = joint_feature_map(*fs, x, y);
        double mass = 0.0;
        for (const auto& [idx, val] : f.entries())
            if (idx >= lo && idx < hi) mass += val;
        CHECK(mass == M - 1);
    }
}

TEST_CASE("concatenation adds a seam transition") {
    auto fs = make_space(3, 2);
    Sequence left = attr_sequence({{0}, {1}});
    Sequence right = attr_sequence({{2}});
    Sequence both = attr_sequence({{0}, {1}, {2}});
    LabelSeq yl{0, 1}, yr{1}, yb{0, 1, 1};
    auto f_left = joint_feature_map(*fs, left, yl);
    auto f_right = joint_feature_map(*fs, right, yr);
    auto f_both = joint_feature_map(*fs, both, yb);
    // f(both) = f(left) + f(right) + seam transition - right's start indicator.
    auto expect = axpy(1.0, f_right, f_left);
    expect = axpy(1.0,
                  SparseVec::from_entries(
                      {{static_cast<std::uint32_t>(fs->transition_index(1, 1)), 1.0},
                       {static_cast<std::uint32_t>(fs->start_index(1)), -1.0}}),
                  expect);
    CHECK(f_both == expect);
}

TEST_CASE("feature map validation") {
    auto fs = make_space(2, 2);
    Sequence x = attr_sequence({{0}});
    CHECK_THROWS_AS(joint_feature_map(*fs, Sequence{}, {}), domain_error);
    CHECK_THROWS_AS(joint_feature_map(*fs, x, {0, 1}), domain_error);
    CHECK_THROWS_AS(joint_feature_map(*fs, x, {2}), domain_error);
    Sequence oov = attr_sequence({{7}});
    CHECK_THROWS_AS(joint_feature_map(*fs, oov, {0}), domain_error);
}

TEST_CASE("feature delta identities") {
    auto fs = make_space(3, 2);
    Sequence x = attr_sequence({{0}});
    CHECK(feature_delta(*fs, x, {1}, {1}).empty());

    auto d = feature_delta(*fs, x, {0}, {1});
    REQUIRE(d.size() == 4);
    CHECK(d.get(static_cast<std::uint32_t>(fs->emission_index(0, 0))) == 1.0);
    CHECK(d.get(static_cast<std::uint32_t>(fs->emission_index(0, 1))) == -1.0);
    CHECK(d.get(static_cast<std::uint32_t>(fs->start_index(0))) == 1.0);
    CHECK(d.get(static_cast<std::uint32_t>(fs->start_index(1))) == -1.0);
}

TEST_CASE("feature delta equals explicit subtraction") {
    Rng rng(19);
    auto fs = make_space(4, 3);
    for (int trial = 0; trial < 200; ++trial) {
        int M = 1 + rng.index(6);
        Sequence x = random_sequence(4, M, rng);
        LabelSeq y_ref = random_labels(3, M, rng);
        LabelSeq y = random_labels(3, M, rng);
        auto d = feature_delta(*fs, x, y_ref, y);
        auto oracle = subtract(joint_feature_map(*fs, x, y_ref), joint_feature_map(*fs, x, y));
        CHECK(d == oracle);
    }
}

TEST_CASE("delta dot matches score difference") {
    Rng rng(23);
    auto fs = make_space(4, 3);
    for (int trial = 0; trial < 100; ++trial) {
        int M = 1 + rng.index(6);
        Sequence x = random_sequence(4, M, rng);
        LabelSeq y_ref = random_labels(3, M, rng);
        LabelSeq y = random_labels(3, M, rng);
        Model model = random_model(fs, rng);
        double via_delta = dot(model.weights, feature_delta(*fs, x, y_ref, y));
        double direct = dot(model.weights, joint_feature_map(*fs, x, y_ref)) -
                        dot(model.weights, joint_feature_map(*fs, x, y));
        CHECK(via_delta == doctest::Approx(direct).epsilon(1e-9));
    }
}

} // TEST_SUITE
