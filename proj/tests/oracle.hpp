#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain bitmasks and never call into the library's closure or basis code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "passfca/context.hpp"

namespace oracle {

using Mask = std::uint32_t;

struct MaskContext {
    int attributes = 0;
    std::vector<Mask> rows;

    Mask full() const { return attributes == 32 ? ~Mask{0} : (Mask{1} << attributes) - 1; }

    Mask closure(Mask a) const
    {
        Mask common = full();
        for (auto r : rows)
            if ((r & a) == a) common &= r;
        return common;
    }
    int support(Mask a) const
    {
        int n = 0;
        for (auto r : rows) n += (r & a) == a;
        return n;
    }
};

struct MaskImplication {
    Mask premise;
    Mask conclusion;
    int support;
};

inline MaskContext random_context(std::mt19937& rng, int max_objects, int max_attributes, double density = -1)
{
    std::uniform_int_distribution<int> objects(0, max_objects);
    std::uniform_int_distribution<int> attributes(0, max_attributes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MaskContext ctx;
    ctx.attributes = attributes(rng);
    int n = objects(rng);
    double p = density >= 0 ? density : 0.2 + 0.6 * unit(rng);
    for (int g = 0; g < n; ++g) {
        Mask row = 0;
        for (int m = 0; m < ctx.attributes; ++m)
            if (unit(rng) < p) row |= Mask{1} << m;
        ctx.rows.push_back(row);
    }
    return ctx;
}

/// Pseudo-intents straight from the definition: P is not closed and contains
/// the closure of every pseudo-intent strictly inside it.
inline std::vector<MaskImplication> pseudo_intent_basis(const MaskContext& ctx)
{
    std::vector<Mask> subsets(std::size_t{1} << ctx.attributes);
    for (Mask s = 0; s < subsets.size(); ++s) subsets[s] = s;
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });

    std::vector<MaskImplication> basis;
    for (Mask p : subsets) {
        Mask closed = ctx.closure(p);
        if (closed == p) continue;
        bool pseudo = true;
        for (const auto& q : basis)
            if ((q.premise & p) == q.premise && q.premise != p && (q.conclusion & p) != q.conclusion) {
                pseudo = false;
                break;
            }
        if (pseudo) basis.push_back({p, closed, ctx.support(p)});
    }
    return basis;
}

/// Fixpoint of applying every implication whose premise is contained.
inline Mask saturate(Mask a, const std::vector<MaskImplication>& basis)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& imp : basis)
            if ((imp.premise & a) == imp.premise && (imp.conclusion & a) != imp.conclusion) {
                a |= imp.conclusion;
                changed = true;
            }
    }
    return a;
}

inline passfca::FormalContext to_context(const MaskContext& m)
{
    std::vector<std::string> objects, attributes;
    std::vector<passfca::AttributeSet> rows;
    for (int a = 0; a < m.attributes; ++a) attributes.push_back("m" + std::to_string(a));
    for (std::size_t g = 0; g < m.rows.size(); ++g) {
        objects.push_back("g" + std::to_string(g));
        passfca::AttributeSet row(static_cast<std::size_t>(m.attributes));
        for (int a = 0; a < m.attributes; ++a)
            if (m.rows[g] >> a & 1u) row.insert(static_cast<std::size_t>(a));
        rows.push_back(row);
    }
    return passfca::FormalContext(objects, attributes, rows);
}

inline passfca::AttributeSet to_set(Mask mask, int attributes)
{
    passfca::AttributeSet s(static_cast<std::size_t>(attributes));
    for (int a = 0; a < attributes; ++a)
        if (mask >> a & 1u) s.insert(static_cast<std::size_t>(a));
    return s;
}

inline Mask to_mask(const passfca::AttributeSet& s)
{
    Mask m = 0;
    for (auto a : s) m |= Mask{1} << a;
    return m;
}

/// Insert/delete cost 1, substitution 2, computed as |a| + |b| - 2 * LCS(a, b).
inline std::size_t edit_distance_via_lcs(std::string_view a, std::string_view b)
{
    std::vector<std::vector<std::size_t>> lcs(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            lcs[i][j] = a[i - 1] == b[j - 1] ? lcs[i - 1][j - 1] + 1 : std::max(lcs[i - 1][j], lcs[i][j - 1]);
    return a.size() + b.size() - 2 * lcs[a.size()][b.size()];
}

/// Half-up rounding done in floating point, independent of the integer formula in the library.
inline int ratio_reference(std::string_view a, std::string_view b)
{
    double total = static_cast<double>(a.size() + b.size());
    if (total == 0) return 100;
    double exact = 100.0 * (total - static_cast<double>(edit_distance_via_lcs(a, b))) / total;
    int floor_part = static_cast<int>(exact);
    double frac = exact - floor_part;
    // exact halves are representable as k/2L only approximately; compare with a tolerance
    return frac + 1e-9 >= 0.5 ? floor_part + 1 : floor_part;
}

inline std::string token_sort_reference(std::string_view s)
{
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) out += (i ? " " : "") + tokens[i];
    return out;
}

} // namespace oracle
