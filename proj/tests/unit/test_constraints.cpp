#include <doctest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "seqssvm/constraints.hpp"

using namespace seqssvm;
using namespace testutil;

namespace {

// Alphabet AUTH/TITLE/LOC used by the hand-evaluated cases.
Alphabet doc_alphabet() {
    Alphabet a;
    a.intern("AUTH");
    a.intern("TITLE");
    a.intern("LOC");
    return a;
}

ConstraintSpec run_count_spec(int label_index, Relation rel = Relation::le, double c = 1.0,
                              PenaltyForm form = PenaltyForm::squared, double r = 1000.0) {
    ConstraintSpec s;
    s.id = "runs";
    s.level = ConstraintLevel::instance;
    s.feature = "label_list_count";
    s.label_index = label_index;
    s.relation = rel;
    s.target = c;
    s.penalty_form = form;
    s.scale = r;
    return s;
}

Sequence words(const std::vector<std::string>& surfaces) { return make_sequence(surfaces); }

CorpusState state_of(const std::vector<const Sequence*>& xs, std::vector<LabelSeq> ys, int k) {
    return CorpusState(xs, std::move(ys), k);
}

} // namespace

TEST_SUITE("constraints") {

TEST_CASE("run counting features") {
    Sequence x = words({"a", "b", "c", "d"});
    ConstraintSpec runs = run_count_spec(0);
    CHECK(eval_feature(runs, x, {0, 0, 1, 0}) == 2.0);
    CHECK(eval_feature(runs, x, {0, 0, 0, 0}) == 1.0);
    CHECK(eval_feature(runs, x, {1, 1, 2, 1}) == 0.0);

    ConstraintSpec nc;
    nc.feature = "noncontiguous_labels";
    Sequence x3 = words({"a", "b", "c"});
    CHECK(eval_feature(nc, x3, {0, 1, 0}) == 1.0);
    CHECK(eval_feature(nc, x3, {0, 1, 2}) == 0.0);
    CHECK(eval_feature(nc, x, {0, 1, 0, 1}) == 2.0);
}

TEST_CASE("word_label feature") {
    ConstraintSpec s;
    s.feature = "word_label";
    s.word = "CA";
    s.label_index = 2;
    CHECK(eval_feature(s, words({"in", "CA", "now"}), {0, 2, 0}) == 1.0);
    CHECK(eval_feature(s, words({"no", "match", "here"}), {0, 0, 0}) == 1.0); // absent: vacuous
    CHECK(eval_feature(s, words({"CA", "and", "CA"}), {2, 0, 1}) == 0.0);    // one mismatch
    CHECK(eval_feature(s, words({"ca"}), {0}) == 1.0);                       // case-sensitive
}

TEST_CASE("penalty formulas") {
    ConstraintSpec s = run_count_spec(0, Relation::le, 1.0, PenaltyForm::squared, 1000.0);
    CHECK(penalty(s, 3.0) == 4000.0);
    CHECK(penalty(s, 1.0) == 0.0); // 1 <= 1 holds
    CHECK(penalty(s, 0.0) == 0.0);

    s.penalty_form = PenaltyForm::absolute;
    CHECK(penalty(s, 3.0) == 2000.0);

    s.penalty_form = PenaltyForm::constant;
    CHECK(penalty(s, 3.0) == 1000.0);
    CHECK(penalty(s, 1.0) == 0.0);

    ConstraintSpec eq;
    eq.feature = "word_label";
    eq.relation = Relation::eq;
    eq.target = 1.0;
    eq.penalty_form = PenaltyForm::constant;
    eq.scale = 1000.0;
    CHECK(penalty(eq, 0.0) == 1000.0);
    CHECK(penalty(eq, 1.0) == 0.0);

    ConstraintSpec ge;
    ge.feature = "label_percentage";
    ge.relation = Relation::ge;
    ge.target = 30.0;
    ge.penalty_form = PenaltyForm::squared;
    ge.scale = 2.0;
    CHECK(penalty(ge, 20.0) == 200.0);
    CHECK(penalty(ge, 30.0) == 0.0);
    CHECK(penalty(ge, 40.0) == 0.0);
}

TEST_CASE("corpus features from statistics") {
    Sequence a = words({"x", "y", "z"});
    ConstraintSpec pct;
    pct.level = ConstraintLevel::corpus;
    pct.feature = "label_percentage";
    pct.label_index = 0;

    auto st = state_of({&a}, {{0, 0, 0}}, 3);
    CHECK(eval_corpus_feature(pct, st) == 100.0);

    Sequence b = words({"u", "v", "w", "q", "r"});
    auto st2 = state_of({&a, &b}, {{0, 1, 1}, {2, 2, 2, 2, 0}}, 3);
    CHECK(eval_corpus_feature(pct, st2) == doctest::Approx(100.0 * 2 / 8).epsilon(1e-12));

    ConstraintSpec frac;
    frac.level = ConstraintLevel::corpus;
    frac.feature = "nonpunct_transition_fraction";
    CHECK(eval_corpus_feature(frac, st) == 0.0); // no transitions anywhere

    // "Go , now": transition 0->1 after "Go" (non-punct), 1->0 after "," (punct).
    Sequence c = words({"Go", ",", "now"});
    auto st3 = state_of({&c}, {{0, 1, 0}}, 2);
    CHECK(eval_corpus_feature(frac, st3) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(eval_corpus_feature(pct, CorpusState{}) == 0.0);
}

TEST_CASE("total penalty sums instance and corpus terms") {
    CHECK(total_constraint_penalty({}, CorpusState{}) == 0.0);

    Sequence a = words({"p", "q", "r", "s"});
    Sequence b = words({"t", "u"});
    auto st = state_of({&a, &b}, {{0, 0, 1, 0}, {1, 1}}, 3);

    // Instance: AUTH runs <= 1 squared r=1000; seq a has 2 runs -> 1000, b has 0 -> 0.
    ConstraintSpec inst = run_count_spec(0);
    // Corpus: AUTH percentage == 50, squared r=10; actual 3/6 = 50% -> 0.
    ConstraintSpec corp;
    corp.id = "pct";
    corp.level = ConstraintLevel::corpus;
    corp.feature = "label_percentage";
    corp.label_index = 0;
    corp.relation = Relation::eq;
    corp.target = 50.0;
    corp.penalty_form = PenaltyForm::squared;
    corp.scale = 10.0;
    CHECK(total_constraint_penalty({inst, corp}, st) == doctest::Approx(1000.0).epsilon(1e-12));

    // Shift the target: percentage off by 20 -> 10*400 = 4000 on top.
    corp.target = 30.0;
    CHECK(total_constraint_penalty({inst, corp}, st) == doctest::Approx(5000.0).epsilon(1e-12));
}

TEST_CASE("apply_switch is involutive and matches rebuild") {
    Rng rng(80);
    std::vector<Sequence> seqs;
    for (int j = 0; j < 6; ++j) seqs.push_back(random_sequence(3, 2 + rng.index(6), rng));
    std::vector<const Sequence*> ptrs;
    std::vector<LabelSeq> ys;
    for (const auto& s : seqs) {
        ptrs.push_back(&s);
        ys.push_back(random_labels(3, s.length(), rng));
    }
    CorpusState st(ptrs, ys, 3);

    auto snapshot = [&] {
        std::vector<long long> v{st.total_tokens(), st.transitions(), st.nonpunct_transitions()};
        for (int k = 0; k < 3; ++k) v.push_back(st.label_count(k));
        return v;
    };

    auto before = snapshot();
    int j = 2, m = 1;
    int old_label = st.labeling(j)[m];
    int new_label = (old_label + 1) % 3;
    st.apply_switch(j, m, old_label, new_label);
    st.apply_switch(j, m, new_label, old_label);
    CHECK(snapshot() == before);

    for (int t = 0; t < 1000; ++t) {
        int jj = rng.index(ptrs.size());
        int mm = rng.index(static_cast<std::size_t>(seqs[jj].length()));
        int cur = st.labeling(jj)[mm];
        int nxt = (cur + 1 + rng.index(2)) % 3;
        st.apply_switch(jj, mm, cur, nxt);
    }
    auto incremental = snapshot();
    st.rebuild();
    CHECK(snapshot() == incremental);

    CHECK_THROWS_AS(st.apply_switch(0, 0, (st.labeling(0)[0] + 1) % 3, st.labeling(0)[0]),
                    domain_error); // stale old label
    CHECK_THROWS_AS(st.apply_switch(0, 0, st.labeling(0)[0], st.labeling(0)[0]), domain_error);
}

TEST_CASE("single-token corpus count moves by one") {
    Sequence a = words({"only"});
    CorpusState st({&a}, {{0}}, 2);
    CHECK(st.label_count(0) == 1);
    CHECK(st.label_count(1) == 0);
    st.apply_switch(0, 0, 0, 1);
    CHECK(st.label_count(0) == 0);
    CHECK(st.label_count(1) == 1);
}

TEST_CASE("delta_penalty equals the from-scratch difference") {
    Rng rng(81);
    Alphabet al = doc_alphabet();

    std::vector<ConstraintSpec> specs;
    specs.push_back(run_count_spec(0));
    ConstraintSpec nc;
    nc.id = "nc";
    nc.feature = "noncontiguous_labels";
    nc.relation = Relation::le;
    nc.target = 0.0;
    nc.penalty_form = PenaltyForm::absolute;
    nc.scale = 7.0;
    specs.push_back(nc);
    ConstraintSpec pct;
    pct.id = "pct";
    pct.level = ConstraintLevel::corpus;
    pct.feature = "label_percentage";
    pct.label_index = 1;
    pct.relation = Relation::eq;
    pct.target = 30.0;
    pct.penalty_form = PenaltyForm::squared;
    pct.scale = 3.0;
    specs.push_back(pct);
    ConstraintSpec frac;
    frac.id = "frac";
    frac.level = ConstraintLevel::corpus;
    frac.feature = "nonpunct_transition_fraction";
    frac.relation = Relation::le;
    frac.target = 0.25;
    frac.penalty_form = PenaltyForm::squared;
    frac.scale = 1000.0;
    specs.push_back(frac);

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Sequence> seqs;
        int u = 2 + rng.index(3);
        for (int j = 0; j < u; ++j) {
            std::vector<std::string> surfaces;
            int len = 2 + rng.index(5);
            for (int m = 0; m < len; ++m)
                surfaces.push_back(rng.below(4) == 0 ? "," : "tok" + std::to_string(rng.below(5)));
            seqs.push_back(make_sequence(surfaces));
        }
        std::vector<const Sequence*> ptrs;
        std::vector<LabelSeq> ys;
        for (const auto& s : seqs) {
            ptrs.push_back(&s);
            ys.push_back(random_labels(3, s.length(), rng));
        }
        CorpusState st(ptrs, ys, 3);
        double before = total_constraint_penalty(specs, st);

        int j = rng.index(ptrs.size());
        int m = rng.index(static_cast<std::size_t>(seqs[j].length()));
        int cur = st.labeling(j)[m];
        int nxt = (cur + 1 + rng.index(2)) % 3;
        double predicted = delta_penalty(specs, st, j, m, nxt);

        st.apply_switch(j, m, cur, nxt);
        double after = total_constraint_penalty(specs, st);
        CHECK(predicted == doctest::Approx(after - before).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("delta_penalty hand cases") {
    Sequence a = words({"w", "w", "w"});
    CorpusState st({&a}, {{0, 0, 0}}, 3);
    std::vector<ConstraintSpec> specs{run_count_spec(0)};

    // Splitting the single run in two: |2-1|^2 - |1-1|^2 at r=1000 -> +1000.
    CHECK(delta_penalty(specs, st, 0, 1, 1) == doctest::Approx(1000.0).epsilon(1e-12));

    // A switch no spec looks at changes nothing.
    ConstraintSpec other = run_count_spec(2);
    CorpusState st2({&a}, {{1, 1, 1}}, 3);
    CHECK(delta_penalty({other}, st2, 0, 1, 0) == 0.0);
}

TEST_CASE("constraint JSON parsing and round trip") {
    Alphabet al = doc_alphabet();
    std::string text = R"([
      {"id": "one-auth", "feature": "label_list_count", "params": {"label": "AUTH"},
       "relation": "le", "c": 1, "penalty": "squared", "r": 1000},
      {"id": "ca-loc", "feature": "word_label", "params": {"word": "CA", "label": "LOC"},
       "relation": "eq", "c": 1, "penalty": "constant", "r": 1000},
      {"id": "auth-share", "feature": "label_percentage", "params": {"label": "AUTH"},
       "relation": "eq", "c": 30, "penalty": "squared", "r": 1000},
      {"id": "punct-trans", "feature": "nonpunct_transition_fraction", "params": {},
       "relation": "le", "c": 0.01, "penalty": "squared", "r": 1000}
    ])";
    auto specs = parse_constraints(text, al);
    REQUIRE(specs.size() == 4);
    CHECK(specs[0].level == ConstraintLevel::instance);
    CHECK(specs[0].label_index == 0);
    CHECK(specs[1].word == "CA");
    CHECK(specs[1].label_index == 2);
    CHECK(specs[2].level == ConstraintLevel::corpus);
    CHECK(specs[3].level == ConstraintLevel::corpus);
    CHECK(specs[3].target == 0.01);

    auto again = parse_constraints(constraints_to_json(specs), al);
    REQUIRE(again.size() == specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(again[i].id == specs[i].id);
        CHECK(again[i].feature == specs[i].feature);
        CHECK(again[i].level == specs[i].level);
        CHECK(again[i].label_index == specs[i].label_index);
        CHECK(again[i].relation == specs[i].relation);
        CHECK(again[i].target == specs[i].target);
        CHECK(again[i].penalty_form == specs[i].penalty_form);
        CHECK(again[i].scale == specs[i].scale);
    }
}

TEST_CASE("constraint parsing rejects bad input") {
    Alphabet al = doc_alphabet();
    auto reject = [&](const std::string& text) {
        CHECK_THROWS_AS(parse_constraints(text, al), config_error);
    };
    reject(R"([{"id":"x","feature":"no_such_tag","params":{},"relation":"eq","c":1,"penalty":"squared","r":1}])");
    reject(R"([{"id":"x","feature":"label_list_count","params":{"label":"NOPE"},"relation":"le","c":1,"penalty":"squared","r":1}])");
    reject(R"([{"id":"x","feature":"label_list_count","params":{"label":"AUTH"},"relation":"huh","c":1,"penalty":"squared","r":1}])");
    reject(R"([{"id":"x","feature":"label_list_count","params":{"label":"AUTH"},"relation":"le","c":1,"penalty":"squared","r":0}])");
    reject(R"([{"id":"x","feature":"label_list_count","params":{"label":"AUTH"},"relation":"le","c":1,"penalty":"cubic","r":1}])");
    reject(R"([{"feature":"label_list_count","params":{"label":"AUTH"},"relation":"le","c":1,"penalty":"squared","r":1}])");
    reject(R"([{"id":"x","feature":"word_label","params":{"word":"","label":"AUTH"},"relation":"eq","c":1,"penalty":"constant","r":1}])");
    // Explicit level must agree with the tag's.
    reject(R"([{"id":"x","feature":"label_percentage","level":"instance","params":{"label":"AUTH"},"relation":"eq","c":30,"penalty":"squared","r":1}])");
    CHECK_THROWS_AS(parse_constraints("not json", al), config_error);
}

} // TEST_SUITE
