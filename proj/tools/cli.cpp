#include "cli.hpp"

#include "privfn/characterize.hpp"
#include "privfn/eavesdrop.hpp"
#include "privfn/errors.hpp"
#include "privfn/information.hpp"
#include "privfn/io.hpp"
#include "privfn/noninteractive.hpp"
#include "privfn/privacy.hpp"
#include "privfn/simharness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace privfn::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;

// Floats are rounded to 10 significant digits before serialization so that
// identical invocations are byte-identical.
double sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::strtod(buf, nullptr);
}

void emit(std::ostream& out, const json& doc, bool pretty) {
    out << (pretty ? doc.dump(2) : doc.dump()) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write file: " + path);
    f << text;
}

json side_report(const PrivacyReport& report) {
    json doc;
    doc["status"] = report.ok() ? "ok" : "violation";
    if (!report.ok()) {
        const auto& v = *report.violation;
        doc["fixed"] = v.fixed;
        doc["pair"] = json::array({v.pair.first, v.pair.second});
        doc["transcript"] = json{{"messages", v.transcript.messages}, {"output", v.transcript.output}};
        doc["p_first"] = format_rational(v.p_first);
        doc["p_second"] = format_rational(v.p_second);
    }
    return doc;
}

json claim1_json(const Claim1Report& r) {
    return json{{"alice_exact_zero", r.alice_exact_zero},
                {"bob_exact_zero", r.bob_exact_zero},
                {"alice_cmi_bits", sig10(r.alice_cmi_bits)},
                {"bob_cmi_bits", sig10(r.bob_cmi_bits)}};
}

json encoder_json(const EncoderPair& enc) {
    return json{{"phi", enc.phi}, {"psi", enc.psi}, {"m1", enc.m1_size}, {"m2", enc.m2_size}};
}

std::string encoder_description(const EncoderPair& enc) {
    std::string out = "phi=";
    for (size_t i = 0; i < enc.phi.size(); ++i) out += (i ? "," : "") + std::to_string(enc.phi[i]);
    out += " psi=";
    for (size_t i = 0; i < enc.psi.size(); ++i) out += (i ? "," : "") + std::to_string(enc.psi[i]);
    return out;
}

ValueTable parse_value_table(const std::string& document, int rows, int cols) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw ParseError("table document is not valid JSON");
    const json* cells = &doc;
    if (doc.is_object()) {
        if (!doc.contains("g")) throw ParseError("table: expected an array or a \"g\" field");
        cells = &doc["g"];
    }
    std::vector<std::vector<std::string>> table;
    for (const auto& row : *cells) {
        std::vector<std::string> r;
        for (const auto& cell : row) r.push_back(cell.get<std::string>());
        table.push_back(std::move(r));
    }
    try {
        return ValueTable(rows, cols, table);
    } catch (const DomainError& e) {
        throw ParseError(std::string("table: ") + e.what());
    }
}

struct Paths {
    std::string triple, protocol, dist, channel, instance, g_table;
    std::string emit_protocol, dot, csv;
};

int run_analyze(const Paths& paths, bool pretty, std::ostream& out) {
    const FunctionTriple triple = parse_triple(read_file(paths.triple));
    const Decision decision = decide(triple);
    emit(out, json::parse(serialize_decision(decision)), pretty);
    if (decision.computable()) {
        if (!paths.emit_protocol.empty()) {
            write_text_file(paths.emit_protocol, serialize_protocol(decision.protocol()) + "\n");
        }
        if (!paths.dot.empty()) {
            write_text_file(paths.dot, to_dot(decision.protocol()));
        }
        return kExitYes;
    }
    return kExitNo;
}

int run_verify(const Paths& paths, bool pretty, std::ostream& out) {
    const FunctionTriple triple = parse_triple(read_file(paths.triple));
    const ProtocolTree tree = parse_protocol(read_file(paths.protocol));
    validate_tree(tree, triple.x_size(), triple.y_size());

    const CorrectnessReport correctness = check_correct(tree, triple);
    const PrivacyReport alice = check_transcript_privacy(tree, triple, Side::Alice);
    const PrivacyReport bob = check_transcript_privacy(tree, triple, Side::Bob);

    json errors = json::array();
    for (int x = 0; x < correctness.n_rows; ++x) {
        json row = json::array();
        for (int y = 0; y < correctness.n_cols; ++y) row.push_back(format_rational(correctness.at(x, y)));
        errors.push_back(std::move(row));
    }
    const bool secure = correctness.perfect() && alice.ok() && bob.ok();
    json doc;
    doc["verdict"] = secure ? "secure" : "insecure";
    doc["max_error"] = format_rational(correctness.max_error);
    doc["error_table"] = std::move(errors);
    doc["alice"] = side_report(alice);
    doc["bob"] = side_report(bob);
    emit(out, doc, pretty);
    return secure ? kExitYes : kExitNo;
}

int run_claim1(const Paths& paths, int samples, std::uint64_t seed, bool pretty,
               std::ostream& out) {
    const FunctionTriple triple = parse_triple(read_file(paths.triple));
    const ProtocolTree tree = parse_protocol(read_file(paths.protocol));
    validate_tree(tree, triple.x_size(), triple.y_size());
    const JointDistribution dist = parse_distribution(read_file(paths.dist));
    const Claim1SuiteReport suite = claim1_suite(tree, triple, dist, samples, seed);

    json doc;
    doc["verdict"] = suite.all_exact_zero ? "private" : "leaking";
    doc["seed"] = suite.seed;
    doc["base"] = claim1_json(suite.base);
    json two_point = json::array();
    for (const auto& [q, r] : suite.two_point) {
        json entry;
        entry["side"] = q.side == Side::Alice ? "alice" : "bob";
        entry["fixed"] = q.fixed;
        entry["pair"] = json::array({q.pair.first, q.pair.second});
        entry["audit"] = claim1_json(r);
        two_point.push_back(std::move(entry));
    }
    doc["two_point"] = std::move(two_point);
    json sampled = json::array();
    for (const auto& r : suite.sampled) sampled.push_back(claim1_json(r));
    doc["sampled"] = std::move(sampled);
    emit(out, doc, pretty);
    return suite.all_exact_zero ? kExitYes : kExitNo;
}

json perfect_report_json(const PerfectSecurityReport& report) {
    json doc;
    doc["markov_ok"] = report.markov_ok;
    doc["zero_cond_entropy_ok"] = report.zero_cond_entropy_ok;
    doc["privacy_ok"] = report.privacy_ok;
    if (report.violating_uy) {
        doc["violating_uy"] = json::array({(*report.violating_uy)[0], (*report.violating_uy)[1]});
    }
    if (report.violating_ugfy) {
        const auto& v = *report.violating_ugfy;
        doc["violating_ugfy"] = json::array({v[0], v[1], v[2], v[3]});
    }
    return doc;
}

int run_perfect(const Paths& paths, bool search, bool pretty, std::ostream& out) {
    const FunctionTriple triple = parse_triple(read_file(paths.triple));
    const JointDistribution dist = parse_distribution(read_file(paths.dist));

    json doc;
    bool affirmative = false;
    if (search) {
        const PartitionSearchResult result = search_deterministic_u(dist, triple);
        doc["mode"] = "search";
        doc["found"] = result.found();
        doc["partitions_tried"] = result.partitions_tried;
        doc["covers_randomized"] = result.covers_randomized;
        if (result.found()) {
            doc["partition"] = *result.partition;
            doc["report"] = perfect_report_json(result.report);
            affirmative = true;
        } else {
            doc["note"] = "no deterministic witness; randomized channels not covered";
        }
    } else {
        const Channel channel = parse_channel(read_file(paths.channel));
        const PerfectSecurityReport report = check_perfect(channel, dist, triple);
        doc["mode"] = "channel";
        doc["report"] = perfect_report_json(report);
        affirmative = report.ok();
    }
    doc["verdict"] = affirmative ? "perfectly-secure" : "not-established";
    emit(out, doc, pretty);
    return affirmative ? kExitYes : kExitNo;
}

int run_leakage(const Paths& paths, int n, bool pretty, std::ostream& out) {
    const EavesdropInstance instance = parse_instance(read_file(paths.instance));
    const ProtocolTree tree = parse_protocol(read_file(paths.protocol));
    const LeakageReport report = leakage(tree, instance, n);
    json doc;
    doc["n"] = report.n;
    doc["total_bits"] = sig10(report.total_bits);
    doc["per_symbol_bits"] = sig10(report.per_symbol_bits);
    doc["exact_zero"] = report.exact_zero;
    doc["error_prob"] = format_rational(report.error_prob);
    const bool secure = report.exact_zero && report.error_prob == 0;
    doc["verdict"] = secure ? "secure" : "insecure";
    emit(out, doc, pretty);
    return secure ? kExitYes : kExitNo;
}

int run_frontier(const Paths& paths, int m1, int m2, bool pretty, std::ostream& out) {
    const EavesdropInstance instance = parse_instance(read_file(paths.instance));
    const FrontierReport report = brute_force_noninteractive(instance, 1, m1, m2);

    json doc;
    doc["pairs_examined"] = report.pairs_examined;
    json frontier = json::array();
    for (const auto& p : report.frontier) {
        frontier.push_back(json{{"error", format_rational(p.error)},
                                {"leakage_bits", sig10(p.leakage_bits)},
                                {"leak_exact_zero", p.leak_exact_zero},
                                {"encoders", encoder_json(p.encoders)}});
    }
    doc["frontier"] = std::move(frontier);
    if (report.best_zero_error) {
        doc["zero_error_min_leakage_bits"] = sig10(report.best_zero_error->leakage_bits);
        doc["zero_error_encoders"] = encoder_json(report.best_zero_error->encoders);
    } else {
        doc["zero_error_min_leakage_bits"] = nullptr;
        doc["note"] = "no zero-error protocol";
    }
    emit(out, doc, pretty);

    if (!paths.csv.empty()) {
        std::string csv = "error,leakage_bits,encoder_description\n";
        for (const auto& p : report.frontier) {
            char leak[64];
            std::snprintf(leak, sizeof(leak), "%.10g", p.leakage_bits);
            csv += format_rational(p.error) + "," + leak + "," + encoder_description(p.encoders) + "\n";
        }
        write_text_file(paths.csv, csv);
    }
    return report.best_zero_error ? kExitYes : kExitNo;
}

int run_omniscience(const Paths& paths, bool pretty, std::ostream& out) {
    const JointDistribution dist = parse_distribution(read_file(paths.dist));
    const ValueTable g = parse_value_table(read_file(paths.g_table), dist.x_size(), dist.y_size());
    const OmniscienceReport report = omniscience_feasible(dist, g);
    json doc;
    doc["feasible"] = report.feasible;
    doc["h_g_bits"] = sig10(report.h_g);
    doc["i_xy_bits"] = sig10(report.i_xy);
    emit(out, doc, pretty);
    return report.feasible ? kExitYes : kExitNo;
}

int run_simulate(const Paths& paths, long long trials, std::uint64_t seed, bool pretty,
                 std::ostream& out) {
    const ProtocolTree tree = parse_protocol(read_file(paths.protocol));
    const JointDistribution dist = parse_distribution(read_file(paths.dist));
    const EmpiricalStats stats = run_trials(tree, dist, trials, seed);
    json doc = json::parse(serialize_stats(stats));
    doc["tv_distance"] = sig10(tv_distance(stats, tree, dist));
    emit(out, doc, pretty);
    return kExitYes;
}

int run_info(const Paths& paths, bool pretty, std::ostream& out) {
    const FunctionTriple triple = parse_triple(read_file(paths.triple));
    const JointDistribution dist = parse_distribution(read_file(paths.dist));
    if (dist.x_size() != triple.x_size() || dist.y_size() != triple.y_size()) {
        throw DomainError("distribution and triple alphabets do not match");
    }
    json doc;
    doc["h_f_bits"] = sig10(entropy(value_distribution(dist, triple.f)));
    doc["h_g_bits"] = sig10(entropy(value_distribution(dist, triple.g)));
    doc["h_h_bits"] = sig10(entropy(value_distribution(dist, triple.h)));
    doc["i_xy_bits"] = sig10(mutual_information_xy(dist));
    doc["xy_exact_independent"] = exact_independent_xy(dist);
    emit(out, doc, pretty);
    return kExitYes;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"secure-computability analyzer for function triples"};
    app.require_subcommand(1);

    Paths paths;
    bool pretty = false;
    bool search = false;
    int samples = 32;
    std::uint64_t seed = 7;
    long long trials = 10000;
    int n = 1;
    int m1 = 2;
    int m2 = 2;

    app.add_flag("--pretty", pretty, "indent JSON output");

    auto* analyze = app.add_subcommand("analyze", "decide secure computability and synthesize");
    analyze->add_option("--triple", paths.triple, "function triple JSON")->required();
    analyze->add_option("--emit-protocol", paths.emit_protocol, "write the synthesized protocol");
    analyze->add_option("--dot", paths.dot, "write a graphviz rendering");

    auto* verify = app.add_subcommand("verify", "check correctness and both privacy sides");
    verify->add_option("--triple", paths.triple)->required();
    verify->add_option("--protocol", paths.protocol)->required();

    auto* claim1 = app.add_subcommand("claim1", "exact conditional-mutual-information audit");
    claim1->add_option("--triple", paths.triple)->required();
    claim1->add_option("--protocol", paths.protocol)->required();
    claim1->add_option("--dist", paths.dist)->required();
    claim1->add_option("--samples", samples, "full-support distributions to sample");
    claim1->add_option("--seed", seed, "sampling seed");

    auto* perfect = app.add_subcommand("perfect", "one-shot perfect-security conditions");
    perfect->add_option("--triple", paths.triple)->required();
    perfect->add_option("--dist", paths.dist)->required();
    auto* channel_opt = perfect->add_option("--channel", paths.channel, "channel JSON");
    auto* search_flag = perfect->add_flag("--search", search, "enumerate deterministic channels");
    channel_opt->excludes(search_flag);

    auto* leak = app.add_subcommand("leakage", "eavesdropper leakage of a block protocol");
    leak->add_option("--protocol", paths.protocol)->required();
    leak->add_option("--instance", paths.instance)->required();
    leak->add_option("--n", n, "block length")->required();

    auto* frontier = app.add_subcommand("frontier", "brute-force non-interactive Pareto frontier");
    frontier->add_option("--instance", paths.instance)->required();
    frontier->add_option("--m1", m1, "|M1|")->required();
    frontier->add_option("--m2", m2, "|M2|")->required();
    frontier->add_option("--csv", paths.csv, "also write the frontier as CSV");

    auto* omni = app.add_subcommand("omniscience", "H(g(X,Y)) < I(X;Y) feasibility");
    omni->add_option("--dist", paths.dist)->required();
    omni->add_option("--g-table", paths.g_table)->required();

    auto* simulate = app.add_subcommand("simulate", "two-party message-passing trials");
    simulate->add_option("--protocol", paths.protocol)->required();
    simulate->add_option("--dist", paths.dist)->required();
    simulate->add_option("--trials", trials)->required();
    simulate->add_option("--seed", seed, "trial seed (default 7)");

    auto* info = app.add_subcommand("info", "entropies of f, g, h and I(X;Y)");
    info->add_option("--triple", paths.triple)->required();
    info->add_option("--dist", paths.dist)->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->add_flag("--pretty", pretty, "indent JSON output");
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("privfn");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return run_analyze(paths, pretty, out);
        if (verify->parsed()) return run_verify(paths, pretty, out);
        if (claim1->parsed()) return run_claim1(paths, samples, seed, pretty, out);
        if (perfect->parsed()) {
            if (!search && paths.channel.empty()) {
                err << "perfect: needs --channel or --search\n";
                return kExitUsage;
            }
            return run_perfect(paths, search, pretty, out);
        }
        if (leak->parsed()) return run_leakage(paths, n, pretty, out);
        if (frontier->parsed()) return run_frontier(paths, m1, m2, pretty, out);
        if (omni->parsed()) return run_omniscience(paths, pretty, out);
        if (simulate->parsed()) return run_simulate(paths, trials, seed, pretty, out);
        if (info->parsed()) return run_info(paths, pretty, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand\n";
    return kExitUsage;
}

} // namespace privfn::cli
