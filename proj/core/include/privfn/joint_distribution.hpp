#pragma once

#include "privfn/alphabet.hpp"
#include "privfn/limits.hpp"
#include "privfn/rational.hpp"

#include <vector>

namespace privfn {

// Exact pmf over X x Y. Entries are nonnegative rationals summing to exactly 1.
class JointDistribution {
public:
    JointDistribution() = default;
    JointDistribution(Alphabet x, Alphabet y, std::vector<Rational> pmf_row_major);

    const Alphabet& x_alphabet() const { return x_; }
    const Alphabet& y_alphabet() const { return y_; }
    int x_size() const { return x_.size(); }
    int y_size() const { return y_.size(); }

    const Rational& p(int x, int y) const;
    const std::vector<Rational>& pmf() const { return pmf_; }

    static JointDistribution uniform(Alphabet x, Alphabet y);

private:
    Alphabet x_;
    Alphabet y_;
    std::vector<Rational> pmf_;
};

// i.i.d. block extension: pmf(x^n, y^n) = prod_i pmf(x_i, y_i), exact. Product
// alphabet labels are n-tuples; n == 1 returns the distribution unchanged.
JointDistribution iid_extend(const JointDistribution& dist, int n, const Limits& limits = {});

} // namespace privfn
