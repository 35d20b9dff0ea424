#pragma once

// Test-only oracles. These never call the library's decision path; they
// re-derive verdicts from first principles so the two can be compared.

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

namespace oracles {

// 2x2 tables packed as t[x][y].
using Table2 = std::array<std::array<int, 2>, 2>;

struct Triple2 {
    Table2 f, g, h;
};

// All deterministic protocols over 2x2 inputs, as leaf-assignment maps
// (cell x*2+y -> leaf id). A deterministic protocol's transcript is in
// bijection with the leaf reached, and for pairs with equal f value and zero
// error the appended output message is equal too, so transcript equality is
// leaf equality. Constant (zero-information) messages change no transcript
// distribution, so protocols are enumerated up to their removal: a leaf, one
// split, or two alternating splits with independent per-child choices. That
// ceiling is depth 4 counting the output message.
inline std::vector<std::array<int, 4>> deterministic_protocols_2x2() {
    std::vector<std::array<int, 4>> maps;
    auto cell = [](int x, int y) { return x * 2 + y; };

    // single leaf
    maps.push_back({0, 0, 0, 0});

    // Alice splits; child x is a leaf or Bob splits it
    for (int split0 = 0; split0 < 2; ++split0) {
        for (int split1 = 0; split1 < 2; ++split1) {
            std::array<int, 4> m{};
            int next = 0;
            for (int x = 0; x < 2; ++x) {
                const bool split = x == 0 ? split0 : split1;
                if (split) {
                    m[static_cast<size_t>(cell(x, 0))] = next++;
                    m[static_cast<size_t>(cell(x, 1))] = next++;
                } else {
                    m[static_cast<size_t>(cell(x, 0))] = next;
                    m[static_cast<size_t>(cell(x, 1))] = next++;
                }
            }
            maps.push_back(m);
        }
    }

    // Bob splits; child y is a leaf or Alice splits it
    for (int split0 = 0; split0 < 2; ++split0) {
        for (int split1 = 0; split1 < 2; ++split1) {
            std::array<int, 4> m{};
            int next = 0;
            for (int y = 0; y < 2; ++y) {
                const bool split = y == 0 ? split0 : split1;
                if (split) {
                    m[static_cast<size_t>(cell(0, y))] = next++;
                    m[static_cast<size_t>(cell(1, y))] = next++;
                } else {
                    m[static_cast<size_t>(cell(0, y))] = next;
                    m[static_cast<size_t>(cell(1, y))] = next++;
                }
            }
            maps.push_back(m);
        }
    }
    return maps;
}

// Exhaustive search for a deterministic protocol with perfect correctness and
// both transcript-privacy properties.
inline bool securely_computable_2x2(const Triple2& t) {
    auto cell = [](int x, int y) { return x * 2 + y; };
    for (const auto& leaf_of : deterministic_protocols_2x2()) {
        bool ok = true;
        // zero error: f constant per leaf
        for (int a = 0; a < 4 && ok; ++a) {
            for (int b = a + 1; b < 4 && ok; ++b) {
                if (leaf_of[static_cast<size_t>(a)] == leaf_of[static_cast<size_t>(b)] &&
                    t.f[a / 2][a % 2] != t.f[b / 2][b % 2]) {
                    ok = false;
                }
            }
        }
        // privacy against Alice: qualifying (x,y1),(x,y2) share a leaf
        for (int x = 0; x < 2 && ok; ++x) {
            if (t.g[x][0] != t.g[x][1] && t.f[x][0] == t.f[x][1] &&
                leaf_of[static_cast<size_t>(cell(x, 0))] != leaf_of[static_cast<size_t>(cell(x, 1))]) {
                ok = false;
            }
        }
        // privacy against Bob
        for (int y = 0; y < 2 && ok; ++y) {
            if (t.h[0][y] != t.h[1][y] && t.f[0][y] == t.f[1][y] &&
                leaf_of[static_cast<size_t>(cell(0, y))] != leaf_of[static_cast<size_t>(cell(1, y))]) {
                ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Triple index -> tables: 12 bits, f/g/h each 4.
inline Triple2 unpack_triple_2x2(int code) {
    Triple2 t;
    auto unpack = [](int bits) {
        Table2 m;
        m[0][0] = bits & 1;
        m[0][1] = (bits >> 1) & 1;
        m[1][0] = (bits >> 2) & 1;
        m[1][1] = (bits >> 3) & 1;
        return m;
    };
    t.f = unpack(code & 15);
    t.g = unpack((code >> 4) & 15);
    t.h = unpack((code >> 8) & 15);
    return t;
}

// Classic two-party decomposition verdict (the g = y, h = x specialization):
// rows are mergeable when they agree on f somewhere, columns likewise; the
// matrix is decomposable when recursive component splitting reaches
// monochromatic rects.
inline bool classic_decomposable(const std::vector<std::vector<int>>& f,
                                 const std::vector<int>& rows, const std::vector<int>& cols) {
    bool mono = true;
    for (int x : rows) {
        for (int y : cols) {
            mono = mono && f[static_cast<size_t>(x)][static_cast<size_t>(y)] ==
                               f[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[0])];
        }
    }
    if (mono) return true;

    auto components = [](const std::vector<int>& items,
                         const std::function<bool(int, int)>& rel) {
        std::vector<std::vector<int>> comps;
        std::vector<int> comp_of(items.size(), -1);
        for (size_t i = 0; i < items.size(); ++i) {
            if (comp_of[i] != -1) continue;
            std::vector<int> stack{static_cast<int>(i)};
            comp_of[i] = static_cast<int>(comps.size());
            std::vector<int> members;
            while (!stack.empty()) {
                const int a = stack.back();
                stack.pop_back();
                members.push_back(items[static_cast<size_t>(a)]);
                for (size_t b = 0; b < items.size(); ++b) {
                    if (comp_of[b] == -1 &&
                        rel(items[static_cast<size_t>(a)], items[b])) {
                        comp_of[b] = comp_of[static_cast<size_t>(a)];
                        stack.push_back(static_cast<int>(b));
                    }
                }
            }
            std::sort(members.begin(), members.end());
            comps.push_back(std::move(members));
        }
        return comps;
    };

    const auto row_comps = components(rows, [&](int a, int b) {
        for (int y : cols) {
            if (f[static_cast<size_t>(a)][static_cast<size_t>(y)] ==
                f[static_cast<size_t>(b)][static_cast<size_t>(y)]) {
                return true;
            }
        }
        return false;
    });
    if (row_comps.size() >= 2) {
        for (const auto& comp : row_comps) {
            if (!classic_decomposable(f, comp, cols)) return false;
        }
        return true;
    }

    const auto col_comps = components(cols, [&](int a, int b) {
        for (int x : rows) {
            if (f[static_cast<size_t>(x)][static_cast<size_t>(a)] ==
                f[static_cast<size_t>(x)][static_cast<size_t>(b)]) {
                return true;
            }
        }
        return false;
    });
    if (col_comps.size() >= 2) {
        for (const auto& comp : col_comps) {
            if (!classic_decomposable(f, rows, comp)) return false;
        }
        return true;
    }
    return false;
}

} // namespace oracles
