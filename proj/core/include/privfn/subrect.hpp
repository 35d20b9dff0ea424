#pragma once

#include <vector>

namespace privfn {

// Nonempty C x D sub-rectangle of the input grid; indices sorted ascending.
struct SubRect {
    std::vector<int> rows;
    std::vector<int> cols;

    static SubRect full(int n_rows, int n_cols);

    bool contains_row(int x) const;
    bool contains_col(int y) const;
    bool contains(int x, int y) const { return contains_row(x) && contains_col(y); }

    bool operator==(const SubRect&) const = default;
};

// Throws DomainError unless rows/cols are nonempty, sorted, distinct and in range.
void validate_subrect(const SubRect& rect, int n_rows, int n_cols);

} // namespace privfn
