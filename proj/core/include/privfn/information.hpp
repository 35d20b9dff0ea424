#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/protocol_tree.hpp"
#include "privfn/rational.hpp"

#include <array>
#include <vector>

namespace privfn {

// Coordinates of the augmented joint distribution.
enum class Var : int { X = 0, Y = 1, F = 2, G = 3, H = 4, M = 5 };

using VarGroup = std::vector<Var>;

// Exact joint pmf over (x, y, f, g, h, m) induced by a distribution, a triple
// and a protocol tree. f, g, h coordinates are label ids (deterministic given
// (x, y)); m is an id into `transcripts`. Only positive-probability atoms are
// stored; they sum to exactly 1.
struct AugmentedJoint {
    struct Entry {
        std::array<int, 6> coord;
        Rational p;
    };

    std::vector<Entry> entries;
    std::vector<Transcript> transcripts; // m-coordinate decode table
};

AugmentedJoint build_augmented_joint(const ProtocolTree& tree, const FunctionTriple& triple,
                                     const JointDistribution& dist);

// Exact test of A independent of B given C: for every c with p(c) > 0 and all
// a, b in the conditional supports, p(a,b,c) * p(c) == p(a,c) * p(b,c).
// c_group may be empty (plain independence).
bool exact_cond_independent(const AugmentedJoint& joint, const VarGroup& a_group,
                            const VarGroup& b_group, const VarGroup& c_group);

// Base-2 measures on groupings of the augmented joint. Zero-probability terms
// contribute zero; conditional MI is clamped at the -1e-12 float guard.
double entropy_of(const AugmentedJoint& joint, const VarGroup& group);
double conditional_entropy(const AugmentedJoint& joint, const VarGroup& a_group,
                           const VarGroup& given_group);
double mutual_information(const AugmentedJoint& joint, const VarGroup& a_group,
                          const VarGroup& b_group);
double conditional_mutual_information(const AugmentedJoint& joint, const VarGroup& a_group,
                                      const VarGroup& b_group, const VarGroup& c_group);

// Plain pmf entropy in bits. Weights must be nonnegative; they are normalized
// by their exact sum first.
double entropy(const std::vector<Rational>& pmf);

// Distribution of a value table's labels under dist, indexed by label id.
std::vector<Rational> value_distribution(const JointDistribution& dist, const ValueTable& table);

// H(X), H(Y), H(X,Y), I(X;Y) of a joint distribution, in bits.
double entropy_x(const JointDistribution& dist);
double entropy_y(const JointDistribution& dist);
double entropy_xy(const JointDistribution& dist);
double mutual_information_xy(const JointDistribution& dist);

// Exact check that X and Y are independent under dist.
bool exact_independent_xy(const JointDistribution& dist);

} // namespace privfn
