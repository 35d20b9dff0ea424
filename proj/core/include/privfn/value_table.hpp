#pragma once

#include <functional>
#include <string>
#include <vector>

namespace privfn {

// Rectangular table of opaque value labels. Labels are interned per table so
// cell comparisons are integer comparisons; no ordering on values is assumed.
class ValueTable {
public:
    ValueTable() = default;
    ValueTable(int rows, int cols, const std::vector<std::vector<std::string>>& cells);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int id_at(int x, int y) const { return cells_.at(cell_index(x, y)); }
    const std::string& label_at(int x, int y) const { return labels_[static_cast<size_t>(id_at(x, y))]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int distinct_values() const { return static_cast<int>(labels_.size()); }

    bool constant() const;

    std::vector<std::vector<std::string>> to_cells() const;

    static ValueTable filled(int rows, int cols, const std::string& value);
    static ValueTable from_fn(int rows, int cols,
                              const std::function<std::string(int, int)>& fn);

private:
    size_t cell_index(int x, int y) const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> cells_;            // row-major label ids
    std::vector<std::string> labels_;   // id -> label
};

} // namespace privfn
