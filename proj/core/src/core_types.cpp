#include "privfn/errors.hpp"
#include "privfn/function_triple.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/subrect.hpp"
#include "privfn/value_table.hpp"

#include <algorithm>
#include <unordered_map>

namespace privfn {

// ---------------------------------------------------------------------------
// ValueTable
// ---------------------------------------------------------------------------

ValueTable::ValueTable(int rows, int cols, const std::vector<std::vector<std::string>>& cells)
    : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw DomainError("value table must be nonempty");
    if (static_cast<int>(cells.size()) != rows) throw DomainError("value table row count mismatch");
    cells_.reserve(static_cast<size_t>(rows) * static_cast<size_t>(cols));
    std::unordered_map<std::string, int> intern;
    for (int x = 0; x < rows; ++x) {
        const auto& row = cells[static_cast<size_t>(x)];
        if (static_cast<int>(row.size()) != cols) throw DomainError("value table column count mismatch");
        for (const auto& v : row) {
            auto [it, inserted] = intern.emplace(v, static_cast<int>(labels_.size()));
            if (inserted) labels_.push_back(v);
            cells_.push_back(it->second);
        }
    }
}

size_t ValueTable::cell_index(int x, int y) const {
    if (x < 0 || x >= rows_ || y < 0 || y >= cols_) throw DomainError("value table index out of range");
    return static_cast<size_t>(x) * static_cast<size_t>(cols_) + static_cast<size_t>(y);
}

bool ValueTable::constant() const {
    return labels_.size() <= 1;
}

std::vector<std::vector<std::string>> ValueTable::to_cells() const {
    std::vector<std::vector<std::string>> out(static_cast<size_t>(rows_));
    for (int x = 0; x < rows_; ++x) {
        auto& row = out[static_cast<size_t>(x)];
        row.reserve(static_cast<size_t>(cols_));
        for (int y = 0; y < cols_; ++y) row.push_back(label_at(x, y));
    }
    return out;
}

ValueTable ValueTable::filled(int rows, int cols, const std::string& value) {
    return from_fn(rows, cols, [&](int, int) { return value; });
}

ValueTable ValueTable::from_fn(int rows, int cols,
                               const std::function<std::string(int, int)>& fn) {
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(rows));
    for (int x = 0; x < rows; ++x) {
        auto& row = cells[static_cast<size_t>(x)];
        row.reserve(static_cast<size_t>(cols));
        for (int y = 0; y < cols; ++y) row.push_back(fn(x, y));
    }
    return ValueTable(rows, cols, cells);
}

// ---------------------------------------------------------------------------
// FunctionTriple
// ---------------------------------------------------------------------------

FunctionTriple::FunctionTriple(Alphabet x, Alphabet y, ValueTable f_, ValueTable g_, ValueTable h_)
    : x_alphabet(std::move(x)), y_alphabet(std::move(y)), f(std::move(f_)), g(std::move(g_)),
      h(std::move(h_)) {
    for (const ValueTable* t : {&f, &g, &h}) {
        if (t->rows() != x_alphabet.size() || t->cols() != y_alphabet.size()) {
            throw DomainError("function table dimensions do not match the alphabets");
        }
    }
}

// ---------------------------------------------------------------------------
// JointDistribution
// ---------------------------------------------------------------------------

JointDistribution::JointDistribution(Alphabet x, Alphabet y, std::vector<Rational> pmf_row_major)
    : x_(std::move(x)), y_(std::move(y)), pmf_(std::move(pmf_row_major)) {
    const size_t expected = static_cast<size_t>(x_.size()) * static_cast<size_t>(y_.size());
    if (pmf_.size() != expected) throw DomainError("pmf size does not match the alphabets");
    Rational sum = 0;
    for (const auto& p : pmf_) {
        if (p < 0) throw DomainError("pmf entry is negative");
        sum += p;
    }
    if (sum != 1) {
        throw DomainError("pmf sums to " + format_rational(sum) + ", expected 1");
    }
}

const Rational& JointDistribution::p(int x, int y) const {
    if (x < 0 || x >= x_.size() || y < 0 || y >= y_.size()) {
        throw DomainError("pmf index out of range");
    }
    return pmf_[static_cast<size_t>(x) * static_cast<size_t>(y_.size()) + static_cast<size_t>(y)];
}

JointDistribution JointDistribution::uniform(Alphabet x, Alphabet y) {
    const long long cells = static_cast<long long>(x.size()) * y.size();
    std::vector<Rational> pmf(static_cast<size_t>(cells), Rational(1, cells));
    return JointDistribution(std::move(x), std::move(y), std::move(pmf));
}

JointDistribution iid_extend(const JointDistribution& dist, int n, const Limits& limits) {
    if (n < 1) throw DomainError("iid_extend: n must be >= 1");
    if (n == 1) return dist;

    long long outcomes = 1;
    for (int i = 0; i < n; ++i) {
        outcomes *= static_cast<long long>(dist.x_size()) * dist.y_size();
        if (outcomes > limits.max_block_outcomes) {
            throw CapError("iid_extend: block outcome count exceeds the configured cap");
        }
    }

    Alphabet xn = power_alphabet(dist.x_alphabet(), n);
    Alphabet yn = power_alphabet(dist.y_alphabet(), n);
    std::vector<Rational> pmf;
    pmf.reserve(static_cast<size_t>(xn.size()) * static_cast<size_t>(yn.size()));
    for (long long xi = 0; xi < xn.size(); ++xi) {
        const auto xd = unrank_tuple(xi, dist.x_size(), n);
        for (long long yi = 0; yi < yn.size(); ++yi) {
            const auto yd = unrank_tuple(yi, dist.y_size(), n);
            Rational p = 1;
            for (int k = 0; k < n; ++k) {
                p *= dist.p(xd[static_cast<size_t>(k)], yd[static_cast<size_t>(k)]);
            }
            pmf.push_back(std::move(p));
        }
    }
    return JointDistribution(std::move(xn), std::move(yn), std::move(pmf));
}

// ---------------------------------------------------------------------------
// SubRect
// ---------------------------------------------------------------------------

SubRect SubRect::full(int n_rows, int n_cols) {
    SubRect r;
    r.rows.resize(static_cast<size_t>(n_rows));
    r.cols.resize(static_cast<size_t>(n_cols));
    for (int i = 0; i < n_rows; ++i) r.rows[static_cast<size_t>(i)] = i;
    for (int j = 0; j < n_cols; ++j) r.cols[static_cast<size_t>(j)] = j;
    return r;
}

bool SubRect::contains_row(int x) const {
    return std::binary_search(rows.begin(), rows.end(), x);
}

bool SubRect::contains_col(int y) const {
    return std::binary_search(cols.begin(), cols.end(), y);
}

void validate_subrect(const SubRect& rect, int n_rows, int n_cols) {
    auto check = [](const std::vector<int>& v, int bound, const char* what) {
        if (v.empty()) throw DomainError(std::string(what) + ": empty index set");
        int prev = -1;
        for (int i : v) {
            if (i <= prev) throw DomainError(std::string(what) + ": indices must be strictly increasing");
            if (i < 0 || i >= bound) throw DomainError(std::string(what) + ": index out of range");
            prev = i;
        }
    };
    check(rect.rows, n_rows, "rect rows");
    check(rect.cols, n_cols, "rect cols");
}

} // namespace privfn
