#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "seqssvm/model.hpp"

using namespace seqssvm;
using namespace testutil;

TEST_SUITE("model_io") {

TEST_CASE("round trip preserves space and weights") {
    Rng rng(51);
    for (bool with_unknown : {false, true}) {
        auto fs = make_space(4, 3, with_unknown);
        Model m = random_model(fs, rng);
        m.weights[2] = 0.0; // exercise sparse encoding

        std::ostringstream out;
        write_model(out, m);
        std::istringstream in(out.str());
        Model back = read_model(in);

        CHECK(*back.space == *m.space);
        CHECK(back.space->has_unknown() == with_unknown);
        CHECK(back.weights == m.weights);
    }
}

TEST_CASE("serialization is byte-stable") {
    Rng rng(52);
    auto fs = make_space(3, 2);
    Model m = random_model(fs, rng);
    std::ostringstream a, b;
    write_model(a, m);
    write_model(b, m);
    CHECK(a.str() == b.str());

    std::istringstream in(a.str());
    Model back = read_model(in);
    std::ostringstream c;
    write_model(c, back);
    CHECK(c.str() == a.str());
}

TEST_CASE("read rejects malformed files") {
    auto fs = make_space(2, 2);
    Model m(fs);
    std::ostringstream out;
    write_model(out, m);
    std::string good = out.str();

    std::istringstream bad_magic("not a model\n");
    CHECK_THROWS_AS(read_model(bad_magic), parse_error);

    std::istringstream truncated(good.substr(0, good.size() / 2));
    CHECK_THROWS_AS(read_model(truncated), parse_error);

    std::string bad_weight = good + "junk\n";
    // Extra trailing content is ignored only if the weight count says so;
    // corrupt an actual weight line instead.
    Model nz(fs);
    nz.weights[0] = 1.5;
    std::ostringstream out2;
    write_model(out2, nz);
    std::string text = out2.str();
    auto pos = text.rfind("0\t1.5");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "x\ty.z");
    std::istringstream corrupt(text);
    CHECK_THROWS_AS(read_model(corrupt), parse_error);
}

TEST_CASE("weight vector must match the space") {
    auto fs = make_space(2, 2);
    CHECK_THROWS_AS(Model(fs, std::vector<double>(3, 0.0)), domain_error);
    Model ok(fs, std::vector<double>(fs->dimension(), 0.0));
    CHECK(ok.weights.size() == fs->dimension());
}

} // TEST_SUITE
