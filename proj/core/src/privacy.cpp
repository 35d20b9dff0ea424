#include "privfn/privacy.hpp"

#include "privfn/errors.hpp"

namespace privfn {

const Rational& CorrectnessReport::at(int x, int y) const {
    if (x < 0 || x >= n_rows || y < 0 || y >= n_cols) throw DomainError("error index out of range");
    return error[static_cast<size_t>(x) * static_cast<size_t>(n_cols) + static_cast<size_t>(y)];
}

CorrectnessReport check_correct(const ProtocolTree& tree, const FunctionTriple& triple) {
    CorrectnessReport report;
    report.n_rows = triple.x_size();
    report.n_cols = triple.y_size();
    report.max_error = 0;
    report.error.reserve(static_cast<size_t>(report.n_rows) * static_cast<size_t>(report.n_cols));
    for (int x = 0; x < report.n_rows; ++x) {
        for (int y = 0; y < report.n_cols; ++y) {
            Rational err = 0;
            for (const auto& [t, p] : transcript_pmf(tree, x, y)) {
                if (t.output != triple.f.label_at(x, y)) err += p;
            }
            if (err > report.max_error) report.max_error = err;
            report.error.push_back(std::move(err));
        }
    }
    return report;
}

namespace {

// First transcript (in canonical order) whose probabilities differ between the
// two pmfs, if any.
std::optional<std::tuple<Transcript, Rational, Rational>> first_difference(
    const TranscriptPmf& lhs, const TranscriptPmf& rhs) {
    auto li = lhs.begin();
    auto ri = rhs.begin();
    while (li != lhs.end() || ri != rhs.end()) {
        if (ri == rhs.end() || (li != lhs.end() && li->first < ri->first)) {
            if (li->second != 0) return std::make_tuple(li->first, li->second, Rational(0));
            ++li;
        } else if (li == lhs.end() || ri->first < li->first) {
            if (ri->second != 0) return std::make_tuple(ri->first, Rational(0), ri->second);
            ++ri;
        } else {
            if (li->second != ri->second) {
                return std::make_tuple(li->first, li->second, ri->second);
            }
            ++li;
            ++ri;
        }
    }
    return std::nullopt;
}

} // namespace

PrivacyReport check_transcript_privacy(const ProtocolTree& tree, const FunctionTriple& triple,
                                       Side side) {
    PrivacyReport report{side, std::nullopt};
    if (side == Side::Alice) {
        for (int x = 0; x < triple.x_size(); ++x) {
            for (int y1 = 0; y1 < triple.y_size(); ++y1) {
                for (int y2 = y1 + 1; y2 < triple.y_size(); ++y2) {
                    if (triple.g.id_at(x, y1) == triple.g.id_at(x, y2)) continue;
                    if (triple.f.id_at(x, y1) != triple.f.id_at(x, y2)) continue;
                    const auto diff =
                        first_difference(transcript_pmf(tree, x, y1), transcript_pmf(tree, x, y2));
                    if (diff) {
                        report.violation = PrivacyViolation{
                            x, {y1, y2}, std::get<0>(*diff), std::get<1>(*diff), std::get<2>(*diff)};
                        return report;
                    }
                }
            }
        }
    } else {
        for (int y = 0; y < triple.y_size(); ++y) {
            for (int x1 = 0; x1 < triple.x_size(); ++x1) {
                for (int x2 = x1 + 1; x2 < triple.x_size(); ++x2) {
                    if (triple.h.id_at(x1, y) == triple.h.id_at(x2, y)) continue;
                    if (triple.f.id_at(x1, y) != triple.f.id_at(x2, y)) continue;
                    const auto diff =
                        first_difference(transcript_pmf(tree, x1, y), transcript_pmf(tree, x2, y));
                    if (diff) {
                        report.violation = PrivacyViolation{
                            y, {x1, x2}, std::get<0>(*diff), std::get<1>(*diff), std::get<2>(*diff)};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

Claim1Report claim1_audit(const ProtocolTree& tree, const FunctionTriple& triple,
                          const JointDistribution& dist) {
    const AugmentedJoint joint = build_augmented_joint(tree, triple, dist);
    Claim1Report report;
    report.alice_exact_zero =
        exact_cond_independent(joint, {Var::M}, {Var::G}, {Var::F, Var::X});
    report.bob_exact_zero = exact_cond_independent(joint, {Var::M}, {Var::H}, {Var::F, Var::Y});
    report.alice_cmi_bits =
        conditional_mutual_information(joint, {Var::M}, {Var::G}, {Var::F, Var::X});
    report.bob_cmi_bits =
        conditional_mutual_information(joint, {Var::M}, {Var::H}, {Var::F, Var::Y});
    return report;
}

std::vector<QualifyingPair> qualifying_pairs(const FunctionTriple& triple) {
    std::vector<QualifyingPair> out;
    for (int x = 0; x < triple.x_size(); ++x) {
        for (int y1 = 0; y1 < triple.y_size(); ++y1) {
            for (int y2 = y1 + 1; y2 < triple.y_size(); ++y2) {
                if (triple.g.id_at(x, y1) != triple.g.id_at(x, y2) &&
                    triple.f.id_at(x, y1) == triple.f.id_at(x, y2)) {
                    out.push_back(QualifyingPair{Side::Alice, x, {y1, y2}});
                }
            }
        }
    }
    for (int y = 0; y < triple.y_size(); ++y) {
        for (int x1 = 0; x1 < triple.x_size(); ++x1) {
            for (int x2 = x1 + 1; x2 < triple.x_size(); ++x2) {
                if (triple.h.id_at(x1, y) != triple.h.id_at(x2, y) &&
                    triple.f.id_at(x1, y) == triple.f.id_at(x2, y)) {
                    out.push_back(QualifyingPair{Side::Bob, y, {x1, x2}});
                }
            }
        }
    }
    return out;
}

JointDistribution two_point_distribution(const FunctionTriple& triple, const QualifyingPair& q) {
    std::vector<Rational> pmf(
        static_cast<size_t>(triple.x_size()) * static_cast<size_t>(triple.y_size()), Rational(0));
    auto at = [&](int x, int y) -> Rational& {
        return pmf[static_cast<size_t>(x) * static_cast<size_t>(triple.y_size()) +
                   static_cast<size_t>(y)];
    };
    if (q.side == Side::Alice) {
        at(q.fixed, q.pair.first) = Rational(1, 2);
        at(q.fixed, q.pair.second) = Rational(1, 2);
    } else {
        at(q.pair.first, q.fixed) = Rational(1, 2);
        at(q.pair.second, q.fixed) = Rational(1, 2);
    }
    return JointDistribution(triple.x_alphabet, triple.y_alphabet, std::move(pmf));
}

JointDistribution sample_full_support_distribution(const Alphabet& x, const Alphabet& y,
                                                   std::mt19937_64& rng) {
    const size_t cells = static_cast<size_t>(x.size()) * static_cast<size_t>(y.size());
    std::uniform_int_distribution<int> mass(1, 1 << 16);
    std::vector<BigInt> weights(cells);
    BigInt total = 0;
    for (auto& w : weights) {
        w = mass(rng);
        total += w;
    }
    std::vector<Rational> pmf;
    pmf.reserve(cells);
    for (const auto& w : weights) pmf.emplace_back(w, total);
    return JointDistribution(x, y, std::move(pmf));
}

Claim1SuiteReport claim1_suite(const ProtocolTree& tree, const FunctionTriple& triple,
                               const JointDistribution& base_dist, int samples,
                               std::uint64_t seed) {
    Claim1SuiteReport report;
    report.seed = seed;
    report.base = claim1_audit(tree, triple, base_dist);
    bool all_zero = report.base.both_zero();

    for (const auto& q : qualifying_pairs(triple)) {
        Claim1Report r = claim1_audit(tree, triple, two_point_distribution(triple, q));
        all_zero = all_zero && r.both_zero();
        report.two_point.emplace_back(q, std::move(r));
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const JointDistribution dist =
            sample_full_support_distribution(triple.x_alphabet, triple.y_alphabet, rng);
        Claim1Report r = claim1_audit(tree, triple, dist);
        all_zero = all_zero && r.both_zero();
        report.sampled.push_back(std::move(r));
    }

    report.all_exact_zero = all_zero;
    return report;
}

} // namespace privfn
