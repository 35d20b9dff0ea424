#include <doctest.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "privfn/protocol_tree.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = privfn::cli::dispatch(args, out, err);
    return Run{code, out.str(), err.str()};
}

std::string fx(const std::string& name) {
    return fixtures::path(name);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("analyze: computable triple exits 0 with a protocol") {
    const std::string proto = temp_path("tableI_protocol.json");
    const std::string dot = temp_path("tableI_protocol.dot");
    const auto r = cli({"analyze", "--triple", fx("tableI.json"), "--emit-protocol", proto,
                        "--dot", dot});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["verdict"] == "computable");
    CHECK(doc.contains("protocol"));

    // emitted protocol verifies as secure
    const auto v = cli({"verify", "--triple", fx("tableI.json"), "--protocol", proto});
    CHECK(v.code == 0);
    const json vdoc = json::parse(v.out);
    CHECK(vdoc["verdict"] == "secure");
    CHECK(vdoc["max_error"] == "0/1");

    // DOT file exists and is a digraph
    CHECK(privfn::read_file(dot).find("digraph") == 0);
    std::remove(proto.c_str());
    std::remove(dot.c_str());
}

TEST_CASE("analyze: standard-privacy triple exits 1 with a full-matrix witness") {
    const auto r = cli({"analyze", "--triple", fx("tableI_standard.json")});
    CHECK(r.code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["verdict"] == "forbidden");
    CHECK(doc["rect"]["rows"] == json::array({0, 1, 2}));
    CHECK(doc["rect"]["cols"] == json::array({0, 1, 2}));
}

TEST_CASE("analyze: binary AND exits 1") {
    const auto r = cli({"analyze", "--triple", fx("and_standard.json")});
    CHECK(r.code == 1);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"analyze"}).code == 2);                                  // missing --triple
    CHECK(cli({"analyze", "--triple", "/nonexistent.json"}).code == 2); // unreadable file
    CHECK(cli({"bogus-subcommand"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"perfect", "--triple", fx("tableII_swapped.json"), "--dist",
               fx("tableII_swapped_uniform.json")})
              .code == 2); // neither --channel nor --search

    // schema violation
    const std::string bad = temp_path("bad_triple.json");
    {
        std::ofstream f(bad);
        f << R"({"x_alphabet":["a"],"y_alphabet":["b"],"f":[["0"]]})";
    }
    CHECK(cli({"analyze", "--triple", bad}).code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("verify flags an insecure protocol with exit 1") {
    // Alice reveals x, Bob reveals y, output f(x,y): correct but leaks
    namespace p = privfn;
    const auto triple = fixtures::triple("tableI.json");
    const p::SubRect full = p::SubRect::full(3, 3);
    std::map<int, p::BranchPmf> root_branch;
    std::vector<p::ProtocolTree::NodePtr> children;
    for (int x = 0; x < 3; ++x) {
        root_branch[x] = p::BranchPmf{{x, p::Rational(1)}};
        std::map<int, p::BranchPmf> bob;
        std::vector<p::ProtocolTree::NodePtr> leaves;
        for (int y = 0; y < 3; ++y) {
            bob[y] = p::BranchPmf{{y, p::Rational(1)}};
            leaves.push_back(p::ProtocolTree::make_leaf(triple.f.label_at(x, y)));
        }
        children.push_back(p::ProtocolTree::make_internal(
            p::Speaker::Bob, p::SubRect{{x}, full.cols}, std::move(bob), std::move(leaves)));
    }
    const p::ProtocolTree reveal(p::ProtocolTree::make_internal(
        p::Speaker::Alice, full, std::move(root_branch), std::move(children)));
    const std::string path = temp_path("revealing_protocol.json");
    {
        std::ofstream f(path);
        f << p::serialize_protocol(reveal);
    }
    const auto r = cli({"verify", "--triple", fx("tableI.json"), "--protocol", path});
    CHECK(r.code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["verdict"] == "insecure");
    CHECK(doc["max_error"] == "0/1"); // correct, just not private
    CHECK(doc["bob"]["status"] == "violation");
    CHECK(doc["bob"]["pair"] == json::array({1, 2}));
    std::remove(path.c_str());
}

TEST_CASE("claim1 suite over the synthesized protocol") {
    const std::string proto = temp_path("tableI_claim1_proto.json");
    REQUIRE(cli({"analyze", "--triple", fx("tableI.json"), "--emit-protocol", proto}).code == 0);
    const auto r = cli({"claim1", "--triple", fx("tableI.json"), "--protocol", proto, "--dist",
                        fx("uniform3x3.json"), "--samples", "8", "--seed", "7"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["verdict"] == "private");
    CHECK(doc["seed"] == 7);
    CHECK(doc["sampled"].size() == 8);
    CHECK(doc["base"]["alice_exact_zero"] == true);
    std::remove(proto.c_str());
}

TEST_CASE("perfect: channel check and search") {
    const auto with_channel =
        cli({"perfect", "--triple", fx("tableII_swapped.json"), "--dist",
             fx("tableII_swapped_uniform.json"), "--channel", fx("channel_yprime.json")});
    CHECK(with_channel.code == 0);
    CHECK(json::parse(with_channel.out)["verdict"] == "perfectly-secure");

    const auto searched = cli({"perfect", "--triple", fx("tableII_swapped.json"), "--dist",
                               fx("tableII_swapped_uniform.json"), "--search"});
    CHECK(searched.code == 0);
    const json doc = json::parse(searched.out);
    CHECK(doc["found"] == true);
    CHECK(doc["partition"] == json::array({json::array({0, 1}), json::array({2, 3})}));

    const auto correlated = cli({"perfect", "--triple", fx("tableII_swapped.json"), "--dist",
                                 fx("tableII_swapped_correlated.json"), "--search"});
    CHECK(correlated.code == 1);
    CHECK(json::parse(correlated.out)["partitions_tried"] == 15);
}

TEST_CASE("leakage on the shipped interactive protocol") {
    const auto r = cli({"leakage", "--protocol", fx("example1_tree.json"), "--instance",
                        fx("example1.json"), "--n", "1"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["exact_zero"] == true);
    CHECK(doc["error_prob"] == "0/1");
}

TEST_CASE("frontier reports the 1-bit zero-error floor and writes CSV") {
    const std::string csv = temp_path("frontier.csv");
    const auto r = cli({"frontier", "--instance", fx("example1.json"), "--m1", "2", "--m2", "4",
                        "--csv", csv});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["pairs_examined"] == 1024);
    CHECK(doc["zero_error_min_leakage_bits"] == doctest::Approx(1.0));
    const std::string text = privfn::read_file(csv);
    CHECK(text.rfind("error,leakage_bits,encoder_description\n", 0) == 0);
    std::remove(csv.c_str());
}

TEST_CASE("omniscience on the separation instance is infeasible") {
    const std::string gfile = temp_path("g_table.json");
    {
        std::ofstream f(gfile);
        f << R"([["0","1","0","1"],["0","0","1","1"]])";
    }
    const auto r = cli({"omniscience", "--dist", fx("example1.json"), "--g-table", gfile});
    CHECK(r.code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["feasible"] == false);
    CHECK(doc["h_g_bits"] == doctest::Approx(1.0));
    CHECK(doc["i_xy_bits"] == doctest::Approx(0.0));
    std::remove(gfile.c_str());
}

TEST_CASE("simulate echoes the seed and reports a small tv distance") {
    const auto r = cli({"simulate", "--protocol", fx("example1_tree.json"), "--dist",
                        fx("example1.json"), "--trials", "20000", "--seed", "7"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["seed"] == 7);
    CHECK(doc["trials"] == 20000);
    CHECK(doc["tv_distance"].get<double>() < 0.05);
}

TEST_CASE("info prints the four information measures") {
    const auto r = cli({"info", "--triple", fx("tableI.json"), "--dist", fx("uniform3x3.json")});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["i_xy_bits"] == doctest::Approx(0.0));
    CHECK(doc["xy_exact_independent"] == true);
    CHECK(doc["h_h_bits"] == doctest::Approx(0.9182958341).epsilon(1e-9));
}

TEST_CASE("identical invocations are byte-identical") {
    const auto r1 = cli({"analyze", "--triple", fx("tableI.json")});
    const auto r2 = cli({"analyze", "--triple", fx("tableI.json")});
    CHECK(r1.out == r2.out);
    const auto f1 = cli({"frontier", "--instance", fx("example1.json"), "--m1", "2", "--m2", "4"});
    const auto f2 = cli({"frontier", "--instance", fx("example1.json"), "--m1", "2", "--m2", "4"});
    CHECK(f1.out == f2.out);
}

TEST_CASE("--pretty changes rendering, not content") {
    const auto compact = cli({"info", "--triple", fx("tableI.json"), "--dist", fx("uniform3x3.json")});
    const auto pretty = cli({"--pretty", "info", "--triple", fx("tableI.json"), "--dist",
                             fx("uniform3x3.json")});
    CHECK(compact.code == 0);
    CHECK(pretty.code == 0);
    CHECK(compact.out != pretty.out);
    CHECK(json::parse(compact.out) == json::parse(pretty.out));
}
