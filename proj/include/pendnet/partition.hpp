#ifndef PENDNET_PARTITION_HPP
#define PENDNET_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pendnet/graph.hpp"

namespace pendnet {

/// Laplacian eigenvector with entries in {-1, 0, +1}. Bivalent when no
/// entry is zero, trivalent otherwise. The eigenvalue relation holds in
/// exact integer arithmetic.
struct SignVector {
    std::vector<int> entries;
    int lambda = 0;

    bool bivalent() const {
        return std::none_of(entries.begin(), entries.end(), [](int e) { return e == 0; });
    }
};

/// Signed node classes with a matching involution fixing exactly one class
/// (the zero class W0, possibly empty). Matched classes carry opposite signs.
struct MatchedPartition {
    std::vector<std::vector<int>> classes;
    std::vector<int> match;  // involution on class indices
    std::vector<int> sign;   // +1 / -1 per class, 0 for the fixed class
};

struct BalanceReport {
    bool ok = true;
    std::string violation;  // first violated condition, human readable
};

namespace detail {

inline void check_partition_structure(const Graph& g, const MatchedPartition& p) {
    const size_t k = p.classes.size();
    if (k % 2 == 0) throw std::invalid_argument("matched partition: even class count");
    if (p.match.size() != k || p.sign.size() != k)
        throw std::invalid_argument("matched partition: match/sign size mismatch");
    int fixed = -1;
    for (size_t c = 0; c < k; ++c) {
        int mc = p.match[c];
        if (mc < 0 || mc >= static_cast<int>(k) ||
            p.match[mc] != static_cast<int>(c))
            throw std::invalid_argument("matched partition: match is not an involution");
        if (mc == static_cast<int>(c)) {
            if (fixed >= 0) throw std::invalid_argument("matched partition: multiple fixed classes");
            fixed = static_cast<int>(c);
            if (p.sign[c] != 0)
                throw std::invalid_argument("matched partition: fixed class must have sign 0");
        } else if (p.sign[c] != -p.sign[mc] || p.sign[c] == 0) {
            throw std::invalid_argument("matched partition: matched classes need opposite signs");
        }
    }
    if (fixed < 0) throw std::invalid_argument("matched partition: no fixed class");
    std::vector<int> cover(g.n, -1);
    for (size_t c = 0; c < k; ++c)
        for (int node : p.classes[c]) {
            if (node < 0 || node >= g.n)
                throw std::invalid_argument("matched partition: node out of range");
            if (cover[node] >= 0)
                throw std::invalid_argument("matched partition: classes not disjoint");
            cover[node] = static_cast<int>(c);
        }
    for (int i = 0; i < g.n; ++i)
        if (cover[i] < 0) throw std::invalid_argument("matched partition: does not cover V");
}

}  // namespace detail

inline int fixed_class_index(const MatchedPartition& p) {
    for (size_t c = 0; c < p.classes.size(); ++c)
        if (p.match[c] == static_cast<int>(c)) return static_cast<int>(c);
    throw std::invalid_argument("matched partition: no fixed class");
}

/// Checks the two degree-balance conditions of an odd-balanced partition:
///   1. d_W(i) = d_{-W}(j) when [i] != W0, W != [i], and [i] = -[j];
///   2. d_W(i) = d_{-W}(i) when [i] = W0 != W.
/// Throws on structural invalidity; reports the first violated triple.
inline BalanceReport verify_odd_balanced(const Graph& g, const MatchedPartition& p) {
    detail::check_partition_structure(g, p);
    const int k = static_cast<int>(p.classes.size());
    const int w0 = fixed_class_index(p);

    std::vector<int> class_of(g.n, -1);
    for (int c = 0; c < k; ++c)
        for (int node : p.classes[c]) class_of[node] = c;

    auto adj = g.adjacency_lists();
    // d[i][c]: edges from node i into class c
    std::vector<std::vector<int>> d(g.n, std::vector<int>(k, 0));
    for (int i = 0; i < g.n; ++i)
        for (int j : adj[i]) ++d[i][class_of[j]];

    auto fail = [&](int w, int i, int j) {
        BalanceReport r;
        r.ok = false;
        std::ostringstream msg;
        msg << "d_W(i) mismatch: class " << w << ", nodes " << i + 1 << ", " << j + 1;
        r.violation = msg.str();
        return r;
    };

    // condition 1
    for (int i = 0; i < g.n; ++i) {
        if (class_of[i] == w0) continue;
        int anti = p.match[class_of[i]];
        for (int j : p.classes[anti])
            for (int w = 0; w < k; ++w) {
                if (w == class_of[i]) continue;
                if (d[i][w] != d[j][p.match[w]]) return fail(w, i, j);
            }
    }
    // condition 2
    for (int i : p.classes[w0])
        for (int w = 0; w < k; ++w) {
            if (w == w0) continue;
            if (d[i][w] != d[i][p.match[w]]) return fail(w, i, i);
        }
    return {};
}

/// {W0 = zero entries, W+ = +1 entries, W- = -1 entries}.
inline MatchedPartition sign_vector_to_partition(const SignVector& v) {
    MatchedPartition p;
    p.classes.assign(3, {});
    for (int i = 0; i < static_cast<int>(v.entries.size()); ++i) {
        if (v.entries[i] == 0) p.classes[0].push_back(i);
        else if (v.entries[i] > 0) p.classes[1].push_back(i);
        else p.classes[2].push_back(i);
    }
    p.match = {0, 2, 1};
    p.sign = {0, 1, -1};
    return p;
}

/// d_pm: anti-signed neighbors of any non-zero node; d_0: zero-class
/// neighbors of any non-zero node. Both must be class-constant, and
/// 2*d_pm + d_0 = lambda.
inline std::pair<int, int> partition_counts(const SignVector& v, const Graph& g) {
    auto adj = g.adjacency_lists();
    int d_pm = -1, d_0 = -1;
    for (int i = 0; i < g.n; ++i) {
        if (v.entries[i] == 0) continue;
        int anti = 0, zero = 0;
        for (int j : adj[i]) {
            if (v.entries[j] == -v.entries[i]) ++anti;
            else if (v.entries[j] == 0) ++zero;
        }
        if (d_pm < 0) {
            d_pm = anti;
            d_0 = zero;
        } else if (anti != d_pm || zero != d_0) {
            throw std::runtime_error("partition_counts: not class-constant");
        }
    }
    if (d_pm < 0) throw std::invalid_argument("partition_counts: zero sign vector");
    if (2 * d_pm + d_0 != v.lambda)
        throw std::runtime_error("partition_counts: 2*d_pm + d_0 != lambda");
    return {d_pm, d_0};
}

namespace detail {

// Exact integer check L v = lambda v; returns lambda or -1.
inline int integer_eigenvalue(const std::vector<std::vector<int>>& L,
                              const std::vector<int>& v) {
    const int n = static_cast<int>(v.size());
    int lambda = 0;
    bool have_lambda = false;
    for (int i = 0; i < n; ++i) {
        long long lv = 0;
        for (int j = 0; j < n; ++j) lv += static_cast<long long>(L[i][j]) * v[j];
        if (v[i] == 0) {
            if (lv != 0) return -1;
        } else if (!have_lambda) {
            long long cand = lv / v[i];
            if (cand * v[i] != lv || cand < 0) return -1;
            lambda = static_cast<int>(cand);
            have_lambda = true;
        } else if (lv != static_cast<long long>(lambda) * v[i]) {
            return -1;
        }
    }
    return have_lambda ? lambda : -1;
}

}  // namespace detail

/// All sign vectors v in {-1,0,1}^n (no zeros if !allow_zero) with
/// L v = lambda v exactly, both signs present, deduplicated by fixing the
/// first non-zero entry to +1. Exhaustive for n <= exhaustive_cap;
/// beyond that, rounds numerically computed eigenvectors and verifies
/// exactly (incomplete for degenerate eigenspaces).
inline std::vector<SignVector> find_sign_eigenvectors(const Graph& g, bool allow_zero,
                                                      int exhaustive_cap = 16,
                                                      bool rounding_fallback = true) {
    auto L = laplacian(g);
    std::vector<SignVector> found;

    auto try_vector = [&](const std::vector<int>& v) {
        bool has_pos = false, has_neg = false;
        for (int e : v) {
            has_pos |= e > 0;
            has_neg |= e < 0;
        }
        if (!has_pos || !has_neg) return;
        if (!allow_zero && std::any_of(v.begin(), v.end(), [](int e) { return e == 0; })) return;
        int lambda = detail::integer_eigenvalue(L, v);
        if (lambda < 0) return;
        found.push_back({v, lambda});
    };

    if (g.n <= exhaustive_cap) {
        std::vector<int> digits(g.n, 0);
        std::vector<int> v(g.n);
        const uint64_t total = [&] {
            uint64_t t = 1;
            for (int i = 0; i < g.n; ++i) t *= 3;
            return t;
        }();
        for (uint64_t code = 1; code < total; ++code) {
            int carry = 1;
            for (int i = 0; i < g.n && carry; ++i) {
                digits[i] += carry;
                carry = digits[i] / 3;
                digits[i] %= 3;
            }
            // first non-zero entry fixed to +1: digit 1 = +1, digit 2 = -1
            bool canonical = true;
            for (int i = 0; i < g.n; ++i) {
                if (digits[i] == 0) continue;
                canonical = digits[i] == 1;
                break;
            }
            if (!canonical) continue;
            for (int i = 0; i < g.n; ++i) v[i] = digits[i] == 2 ? -1 : digits[i];
            try_vector(v);
        }
    } else if (rounding_fallback) {
        auto spec = spectrum(g);
        std::vector<int> v(g.n);
        for (int k = 0; k < g.n; ++k) {
            double maxabs = 0.0;
            for (int i = 0; i < g.n; ++i)
                maxabs = std::max(maxabs, std::abs(spec.eigenvectors(i, k)));
            if (maxabs == 0.0) continue;
            for (int i = 0; i < g.n; ++i)
                v[i] = static_cast<int>(std::lround(spec.eigenvectors(i, k) / maxabs));
            // canonical sign
            for (int i = 0; i < g.n; ++i) {
                if (v[i] == 0) continue;
                if (v[i] < 0)
                    for (int j = 0; j < g.n; ++j) v[j] = -v[j];
                break;
            }
            bool dup = false;
            for (const auto& f : found) dup |= f.entries == v;
            if (!dup) try_vector(v);
        }
    } else {
        throw std::runtime_error("find_sign_eigenvectors: search incomplete (n above exhaustive cap)");
    }
    return found;
}

}  // namespace pendnet

#endif
