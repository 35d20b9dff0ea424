#include "privfn/alphabet.hpp"

#include "privfn/errors.hpp"

namespace privfn {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw DomainError("alphabet must be nonempty");
    }
    index_.reserve(symbols_.size());
    for (size_t i = 0; i < symbols_.size(); ++i) {
        auto [it, inserted] = index_.emplace(symbols_[i], static_cast<int>(i));
        if (!inserted) {
            throw DomainError("duplicate alphabet label \"" + symbols_[i] + "\"");
        }
    }
}

std::optional<int> Alphabet::index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string tuple_label(const std::vector<std::string>& parts) {
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    out += ')';
    return out;
}

Alphabet power_alphabet(const Alphabet& base, int n) {
    if (n < 1) throw DomainError("power_alphabet: n must be >= 1");
    if (n == 1) return base;
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= base.size();
    std::vector<std::string> symbols;
    symbols.reserve(static_cast<size_t>(count));
    std::vector<std::string> parts(static_cast<size_t>(n));
    for (long long idx = 0; idx < count; ++idx) {
        const auto digits = unrank_tuple(idx, base.size(), n);
        for (int i = 0; i < n; ++i) parts[static_cast<size_t>(i)] = base.label(digits[static_cast<size_t>(i)]);
        symbols.push_back(tuple_label(parts));
    }
    return Alphabet(std::move(symbols));
}

std::vector<int> unrank_tuple(long long index, int base_size, int n) {
    std::vector<int> digits(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        digits[static_cast<size_t>(i)] = static_cast<int>(index % base_size);
        index /= base_size;
    }
    return digits;
}

} // namespace privfn
