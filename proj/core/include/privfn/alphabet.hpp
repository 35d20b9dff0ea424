#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace privfn {

// Ordered set of distinct symbol labels. Indices are 0-based and stable.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& label(int i) const { return symbols_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::optional<int> index_of(std::string_view label) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

// "(a,b,c)" label for an n-tuple of symbols.
std::string tuple_label(const std::vector<std::string>& parts);

// n-fold product alphabet in lexicographic order, first coordinate most
// significant. n == 1 returns the base alphabet unchanged.
Alphabet power_alphabet(const Alphabet& base, int n);

// Splits a product index back into its n base indices.
std::vector<int> unrank_tuple(long long index, int base_size, int n);

} // namespace privfn
