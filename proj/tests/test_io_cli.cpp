#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "iwalk/cli.hpp"
#include "iwalk/instance_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace iwalk;
using namespace iwalk::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "iwalk_test_io_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

InstanceFile example_file(std::size_t steps = 2) {
    InstanceFile f;
    f.states = {"1", "2"};
    f.lower = {{0, 0.2}, {0.2, 0}};
    f.upper = {{0, 0.9}, {0.9, 0}};
    f.marginal = {1, 1};
    f.q = {1, 0};
    f.f = {0, 1};
    f.steps = steps;
    return f;
}

} // namespace

TEST_CASE("instance files round-trip bit for bit") {
    auto path = scratch("example.json");
    write_instance(path, example_file());
    CHECK(read_instance(path) == example_file());

    GenParams p;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        p.vertices = 2 + seed % 7;
        p.seed = seed;
        auto inst = instance_of(generate_instance(p), 3);
        auto back = parse_instance(serialize_instance(inst));
        CHECK(back == inst);
        CHECK(serialize_instance(back) == serialize_instance(inst));
    }
}

TEST_CASE("malformed instance files are rejected") {
    CHECK_THROWS_AS(parse_instance("{not json"), FormatError);
    CHECK_THROWS_AS(parse_instance("[]"), FormatError);
    auto doc = to_json(example_file());
    doc.erase("upper");
    CHECK_THROWS_AS(instance_from_json(doc), FormatError);
    doc = to_json(example_file());
    doc["steps"] = "two";
    CHECK_THROWS_AS(instance_from_json(doc), FormatError);
    doc = to_json(example_file());
    doc["format"] = "something-else";
    CHECK_THROWS_AS(instance_from_json(doc), FormatError);
    CHECK_THROWS_AS(read_instance(scratch("missing.json")), FormatError);

    auto ragged = example_file();
    ragged.lower = {{0, 0.2}, {0.2}};
    CHECK_THROWS_AS(bounds_of(ragged), StructuralError);
}

TEST_CASE("config parsing keeps unspecified fields") {
    ExperimentConfig base;
    base.instances = 7;
    auto c = config_from_json(nlohmann::json::parse(R"({"vertices": [5], "starts": 9, "seed": 3,
        "strategies": ["right-to-left"], "sense": "max", "generator": {"lower_mean": 0.5}})"),
                              base);
    CHECK(c.vertices == std::vector<std::size_t>{5});
    CHECK(c.steps == std::vector<std::size_t>{2, 4, 6});
    CHECK(c.instances == 7);
    CHECK(c.starts == 9);
    CHECK(c.seed == 3);
    CHECK(c.strategies == std::vector<SweepOrder>{SweepOrder::RightToLeft});
    CHECK(c.sense == Sense::Max);
    CHECK(c.gen.lower_mean == 0.5);
    CHECK(c.gen.qf_mean == 1.5);

    auto again = config_from_json(to_json(c));
    CHECK(to_json(again) == to_json(c));

    CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"starts": "many"})")));
    auto zero = c;
    zero.instances = 0;
    CHECK_THROWS_AS(check_config(zero), std::invalid_argument);
}

TEST_CASE("cli validate exit codes") {
    std::ostringstream out, err;
    auto good = scratch("valid.json");
    write_instance(good, example_file());
    CHECK(cli::cmd_validate(good.string(), out, err) == cli::kExitOk);
    CHECK(out.str().find("valid") != std::string::npos);

    auto bad = example_file();
    bad.marginal = {0.5, 1};
    auto badp = scratch("infeasible.json");
    write_instance(badp, bad);
    out.str("");
    CHECK(cli::cmd_validate(badp.string(), out, err) == cli::kExitInvalid);
    CHECK(out.str().find("FEASIBILITY") != std::string::npos);

    auto junk = scratch("junk.json");
    std::ofstream(junk) << "not an instance";
    CHECK(cli::cmd_validate(junk.string(), out, err) == cli::kExitInput);
    CHECK(cli::cmd_validate(scratch("nope.json").string(), out, err) == cli::kExitInput);
}

TEST_CASE("cli bounds on the example") {
    auto path = scratch("bounds.json");
    write_instance(path, example_file());
    std::ostringstream out, err;
    cli::BoundsOptions opts;
    opts.starts = 64;
    opts.out = scratch("bounds_result.json").string();
    REQUIRE(cli::cmd_bounds(path.string(), opts, out, err) == cli::kExitOk);
    auto text = out.str();
    CHECK(text.find("lower bound: 0.18") != std::string::npos);
    CHECK(text.find("upper bound: 0.74") != std::string::npos);
    CHECK(text.find("values: 0.18, 0.32") != std::string::npos);

    auto first = slurp(*opts.out);
    std::ostringstream out2;
    REQUIRE(cli::cmd_bounds(path.string(), opts, out2, err) == cli::kExitOk);
    CHECK(slurp(*opts.out) == first);
    CHECK(out2.str() == text);

    opts.sense = "sideways";
    CHECK(cli::cmd_bounds(path.string(), opts, out, err) == cli::kExitInput);
}

TEST_CASE("cli oracle answers and refuses") {
    auto path = scratch("oracle.json");
    write_instance(path, example_file());
    std::ostringstream out, err;
    REQUIRE(cli::cmd_oracle(path.string(), {}, out, err) == cli::kExitOk);
    CHECK(out.str().find("exact lower bound: 0.18") != std::string::npos);
    CHECK(out.str().find("exact upper bound: 0.74") != std::string::npos);

    write_instance(path, example_file(1));
    out.str("");
    REQUIRE(cli::cmd_oracle(path.string(), {}, out, err) == cli::kExitOk);
    CHECK(out.str().find("exact lower bound: 0.2 ") != std::string::npos);

    cli::OracleOptions tight;
    tight.budget = 1;
    out.str("");
    CHECK(cli::cmd_oracle(path.string(), tight, out, err) == cli::kExitInvalid);
    CHECK(out.str().find("refused") != std::string::npos);
    CHECK(out.str().find("budget of 1") != std::string::npos);
}

TEST_CASE("cli gen is deterministic and valid") {
    cli::GenOptions opts;
    opts.params.vertices = 7;
    opts.params.seed = 42;
    opts.out = scratch("gen_a.json").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_gen(opts, out, err) == cli::kExitOk);
    auto a = slurp(opts.out);
    opts.out = scratch("gen_b.json").string();
    REQUIRE(cli::cmd_gen(opts, out, err) == cli::kExitOk);
    CHECK(slurp(opts.out) == a);
    CHECK(cli::cmd_validate(opts.out, out, err) == cli::kExitOk);

    opts.out.clear();
    CHECK(cli::cmd_gen(opts, out, err) == cli::kExitInput);
}
