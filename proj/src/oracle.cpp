#include "slpenum/oracle.hpp"

#include <algorithm>
#include <array>

namespace slpenum {

Family brute_select(const Nsta& a, const Forest& f, const OracleBudget& budget) {
    if (f.size() > budget.max_vertices) throw BudgetExceeded("forest too large for subset oracle");
    Family out;
    std::vector<bool> sel(f.size());
    for (uint64_t mask = 0; mask < (uint64_t(1) << f.size()); ++mask) {
        std::vector<uint32_t> s;
        for (uint32_t v = 0; v < f.size(); ++v) {
            sel[v] = (mask >> v) & 1;
            if (sel[v]) s.push_back(v);
        }
        if (nsta_accepts(a, f, sel)) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool brute_run_accepts(const Nsta& a, const Forest& f, const std::vector<bool>& selected, const OracleBudget& budget) {
    if (a.m > budget.max_states || f.size() > 4) throw BudgetExceeded("instance too large for run oracle");
    std::size_t n = f.size();
    if (n == 0) return a.q0 == a.qf;
    auto bit = [&](uint32_t v) { return v < selected.size() && selected[v]; };
    auto in = [](const std::vector<uint32_t>& s, uint32_t q) { return std::find(s.begin(), s.end(), q) != s.end(); };
    std::vector<uint32_t> rho(3 * n, 0);  // rho0, rho1, rhof per vertex
    uint64_t total = 1;
    for (std::size_t i = 0; i < 3 * n; ++i) total *= a.m;
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (auto& x : rho) {
            x = static_cast<uint32_t>(c % a.m);
            c /= a.m;
        }
        auto r0 = [&](uint32_t v) { return rho[3 * v]; };
        auto r1 = [&](uint32_t v) { return rho[3 * v + 1]; };
        auto rf = [&](uint32_t v) { return rho[3 * v + 2]; };
        bool ok = r0(f.roots.front()) == a.q0 && rf(f.roots.back()) == a.qf;
        for (std::size_t i = 0; ok && i + 1 < f.roots.size(); ++i) ok = r0(f.roots[i + 1]) == rf(f.roots[i]);
        for (uint32_t v = 0; ok && v < n; ++v) {
            const auto& kids = f.children[v];
            const auto& init = a.iota_of(f.labels[v], bit(v));
            if (kids.empty()) {
                ok = in(init, r1(v));
            } else {
                ok = in(init, r0(kids.front())) && r1(v) == rf(kids.back());
                for (std::size_t i = 0; ok && i + 1 < kids.size(); ++i) ok = r0(kids[i + 1]) == rf(kids[i]);
            }
            ok = ok && std::binary_search(a.delta.begin(), a.delta.end(), std::array<uint32_t, 3>{r0(v), r1(v), rf(v)});
        }
        if (ok) return true;
    }
    return false;
}

Family brute_dbuta_select(const Dbuta& b, const Expr& e, const OracleBudget& budget) {
    std::size_t leaves = e.leaf_count();
    if (leaves > budget.max_vertices) throw BudgetExceeded("expression too large for subset oracle");
    Family out;
    std::vector<bool> sel(leaves);
    for (uint64_t mask = 0; mask < (uint64_t(1) << leaves); ++mask) {
        std::vector<uint32_t> s;
        for (uint32_t i = 0; i < leaves; ++i) {
            sel[i] = (mask >> i) & 1;
            if (sel[i]) s.push_back(i);
        }
        if (b.accepting(dbuta_run(b, e, sel))) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<uint32_t, std::vector<uint32_t>>> brute_fm_paths(const FmDag& d, uint32_t s,
                                                                      const OracleBudget& budget) {
    if (s >= d.size()) throw InvalidInput("unknown vertex " + std::to_string(s));
    std::vector<std::vector<std::size_t>> out(d.size());
    for (std::size_t i = 0; i < d.edges.size(); ++i) out[d.edges[i].source].push_back(i);
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> result;
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> stack{{s, {}}};
    while (!stack.empty()) {
        auto [v, w] = std::move(stack.back());
        stack.pop_back();
        if (d.is_target[v]) {
            result.push_back({v, w});
            if (result.size() > budget.max_paths) throw BudgetExceeded("path count exceeds oracle budget");
        }
        for (std::size_t i : out[v]) {
            auto w2 = w;
            if (d.edges[i].label != kEpsilon) w2.push_back(d.edges[i].label);
            stack.push_back({d.edges[i].target, std::move(w2)});
        }
    }
    return result;
}

}  // namespace slpenum
