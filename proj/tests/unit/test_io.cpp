#include <doctest.h>

#include <sstream>

#include <bcleak/io.hpp>

using namespace bcleak;

TEST_SUITE("io") {
  TEST_CASE("channel files") {
    const Dmbc c = parse_channel(R"({"x_size": 1, "y1_size": 2, "y2_size": 1, "kernel": [0.25, 0.75]})");
    CHECK(c.y1_given_x(0, 1) == doctest::Approx(0.75));
    CHECK_THROWS_WITH_AS(parse_channel(R"({"x_size": 1, "y1_size": 2, "kernel": [1, 0]})"),
                         doctest::Contains("y2_size"), InputError);
    CHECK_THROWS_WITH_AS(parse_channel(R"({"x_size": 1, "y1_size": 2, "y2_size": 1, "kernel": [1]})"),
                         doctest::Contains("expected 2"), InputError);
    CHECK_THROWS_WITH_AS(parse_channel(R"({"x_size": 2, "y1_size": 2, "y2_size": 1, "kernel": [1, 0, 0.5, 0.4]})"),
                         doctest::Contains("row 1"), InputError);
    CHECK_THROWS_WITH_AS(parse_channel("{\n\"x_size\": 1,\n oops}"), doctest::Contains(":3:"), InputError);
    CHECK_THROWS_AS(load_channel("/nonexistent/channel.json"), InputError);
    const Dmbc round = parse_channel(channel_to_json(c).dump());
    CHECK(round.kernel == c.kernel);
  }

  TEST_CASE("distribution files") {
    const JointPmf p = parse_distribution(R"({"axes": [{"name": "W", "size": 2}, {"name": "X", "size": 1}], "tensor": [0.5, 0.5]})");
    CHECK(p.rank() == 2);
    CHECK_THROWS_AS(parse_distribution(R"({"axes": [{"name": "W", "size": 2}], "tensor": [0.5, 0.6]})"), InputError);
    CHECK_THROWS_WITH_AS(parse_distribution(R"({"axes": [{"size": 2}], "tensor": [0.5, 0.5]})"),
                         doctest::Contains("axes[0]"), InputError);
    const JointPmf q = parse_distribution(distribution_to_json(p).dump());
    CHECK(q.axes() == p.axes());
  }

  TEST_CASE("bits") {
    CHECK(parse_bits("0.25") == 0.25);
    CHECK(parse_bits("inf") == kInfinity);
    CHECK(parse_bits("INF") == kInfinity);
    CHECK_THROWS_AS(parse_bits("abc"), InputError);
    CHECK_THROWS_AS(parse_bits("1.5x"), InputError);
    CHECK(format_bits(kInfinity) == "inf");
    CHECK(format_bits(0.5) == "0.5000000000");
  }

  TEST_CASE("frontier csv and polytope json") {
    StaircaseBuilder b;
    b.add(0.0, 1.0, 0);
    b.add(1.0, 0.0, 1);
    const FrontierCurve f = b.build([](std::size_t) { return JointPmf::uniform({{"X", 2}}); }, "t");
    std::ostringstream os;
    write_frontier_csv(os, f, {"seed: 4"});
    CHECK(os.str() == "# seed: 4\nr1_bits,r2_bits,provenance_id\n0.0000000000,1.0000000000,0\n1.0000000000,0.0000000000,1\n");
    const auto prov = provenance_json(f);
    CHECK(prov["sources"].size() == 2);
    CHECK(prov["sources"][0]["fingerprint"].get<std::string>().size() == 16);

    RatePolytope p;
    p.axes = {"R1", "R2"};
    p.label = "box";
    p.halfspaces = {{{1, 0}, 1, "a"}, {{0, 1}, 1, "b"}, {{-1, 0}, 0, "n1"}, {{0, -1}, 0, "n2"}};
    const auto j = polytope_to_json(p);
    CHECK(j["halfspaces"].size() == 4);
    CHECK(j["vertices"].size() == 4);
    CHECK(j["label"] == "box");
  }
}
