#include "slpenum/automata.hpp"

#include <algorithm>
#include <sstream>

namespace slpenum {

namespace {

void sort_unique(std::vector<uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

const std::vector<uint32_t> kNoStates;

}  // namespace

void Nsta::normalize() {
    if (m == 0) throw InvalidInput("nSTA needs at least one state");
    if (m > 65535) throw InvalidInput("nSTA state count too large");
    auto check = [&](uint32_t q) {
        if (q >= m) throw InvalidInput("state " + std::to_string(q) + " out of range");
    };
    for (const auto& t : delta)
        for (uint32_t q : t) check(q);
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    for (auto& [k, v] : iota) {
        for (uint32_t q : v) check(q);
        sort_unique(v);
    }
    if (iota_default)
        for (auto& v : *iota_default) {
            for (uint32_t q : v) check(q);
            sort_unique(v);
        }
    check(q0);
    check(qf);
}

bool Nsta::covers(Symbol a) const {
    if (iota_default) return true;
    auto it = iota.lower_bound({a, false});
    return it != iota.end() && it->first.first == a;
}

const std::vector<uint32_t>& Nsta::iota_of(Symbol a, bool bit) const {
    if (auto it = iota.find({a, bit}); it != iota.end()) return it->second;
    if (covers(a)) {
        bool explicit_label = iota.count({a, !bit}) > 0;
        if (explicit_label || !iota_default) return kNoStates;
        return (*iota_default)[bit ? 1 : 0];
    }
    throw InvalidInput("alphabet mismatch: label '" + a.name() + "' is not covered by the automaton");
}

Nsta read_nsta(std::string_view text) {
    Nsta a;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool header = false, states = false;
    auto num = [&](const std::string& t) -> uint32_t {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(t, &used);
            if (used != t.size() || v > 0xffffffffUL) throw std::invalid_argument(t);
            return static_cast<uint32_t>(v);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + t + "' on line " + std::to_string(lineno), lineno);
        }
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto fail = [&](const std::string& msg) { return ParseError(msg + " on line " + std::to_string(lineno), lineno); };
        if (!header) {
            if (tok.size() != 2 || tok[0] != "nsta" || tok[1] != "v1") throw fail("expected header 'nsta v1'");
            header = true;
        } else if (tok[0] == "states") {
            if (tok.size() != 2) throw fail("expected 'states <m>'");
            a.m = num(tok[1]);
            states = true;
        } else if (tok[0] == "iota") {
            if (tok.size() < 3) throw fail("expected 'iota <label> <bit> <state>...'");
            uint32_t bit = num(tok[2]);
            if (bit > 1) throw fail("selection bit must be 0 or 1");
            std::vector<uint32_t> qs;
            for (std::size_t i = 3; i < tok.size(); ++i) qs.push_back(num(tok[i]));
            if (tok[1] == "*") {
                if (!a.iota_default) a.iota_default.emplace();
                auto& dst = (*a.iota_default)[bit];
                dst.insert(dst.end(), qs.begin(), qs.end());
            } else {
                auto& dst = a.iota[{Symbol::intern(tok[1]), bit == 1}];
                dst.insert(dst.end(), qs.begin(), qs.end());
            }
        } else if (tok[0] == "trans") {
            if (tok.size() != 4) throw fail("expected 'trans <p> <q> <r>'");
            a.delta.push_back({num(tok[1]), num(tok[2]), num(tok[3])});
        } else if (tok[0] == "init") {
            if (tok.size() != 2) throw fail("expected 'init <q0>'");
            a.q0 = num(tok[1]);
        } else if (tok[0] == "final") {
            if (tok.size() != 2) throw fail("expected 'final <qf>'");
            a.qf = num(tok[1]);
        } else {
            throw fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (!header) throw ParseError("missing header 'nsta v1'", 0);
    if (!states) throw ParseError("missing 'states' line", lineno);
    a.normalize();
    return a;
}

std::string write_nsta(const Nsta& a) {
    std::ostringstream out;
    out << "nsta v1\nstates " << a.m << "\n";
    auto line = [&](const std::string& label, int bit, const std::vector<uint32_t>& qs) {
        out << "iota " << label << " " << bit;
        for (uint32_t q : qs) out << " " << q;
        out << "\n";
    };
    for (const auto& [k, v] : a.iota) line(k.first.name(), k.second ? 1 : 0, v);
    if (a.iota_default)
        for (int bit = 0; bit < 2; ++bit) line("*", bit, (*a.iota_default)[bit]);
    for (const auto& t : a.delta) out << "trans " << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "init " << a.q0 << "\nfinal " << a.qf << "\n";
    return out.str();
}

namespace {

// Boolean m x m matrix.
struct Relation {
    uint32_t m;
    std::vector<uint8_t> bits;
    explicit Relation(uint32_t states) : m(states), bits(std::size_t(states) * states, 0) {}
    static Relation identity(uint32_t states) {
        Relation r(states);
        for (uint32_t i = 0; i < states; ++i) r.set(i, i);
        return r;
    }
    bool get(uint32_t i, uint32_t j) const { return bits[std::size_t(i) * m + j]; }
    void set(uint32_t i, uint32_t j) { bits[std::size_t(i) * m + j] = 1; }
    Relation then(const Relation& o) const {
        Relation r(m);
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t k = 0; k < m; ++k)
                if (get(i, k))
                    for (uint32_t j = 0; j < m; ++j)
                        if (o.get(k, j)) r.set(i, j);
        return r;
    }
};

}  // namespace

bool nsta_accepts(const Nsta& a, const Forest& f, const std::vector<bool>& selected) {
    uint32_t m = a.m;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> by_middle(m);
    for (const auto& t : a.delta) by_middle[t[1]].push_back({t[0], t[2]});
    // rel[v]: (p, p') such that the tree at v admits a run with rho0 = p and rhof = p'.
    std::vector<Relation> rel(f.size(), Relation(m));
    for (auto v = static_cast<uint32_t>(f.size()); v-- > 0;) {
        bool bit = v < selected.size() && selected[v];
        const auto& init = a.iota_of(f.labels[v], bit);
        std::vector<bool> rho1(m, false);
        if (f.children[v].empty()) {
            for (uint32_t q : init) rho1[q] = true;
        } else {
            Relation kids = Relation::identity(m);
            for (uint32_t c : f.children[v]) kids = kids.then(rel[c]);
            for (uint32_t p : init)
                for (uint32_t q = 0; q < m; ++q)
                    if (kids.get(p, q)) rho1[q] = true;
        }
        for (uint32_t q = 0; q < m; ++q)
            if (rho1[q])
                for (auto [p, r] : by_middle[q]) rel[v].set(p, r);
    }
    Relation all = Relation::identity(m);
    for (uint32_t r : f.roots) all = all.then(rel[r]);
    return all.get(a.q0, a.qf);
}

State TypeAutomaton::step(State l, State r, Op op) const {
    if (l == 2 || r == 2) return 2;
    if (op == Op::HC) return l + r <= 1 ? l + r : 2;
    return l == 1 ? r : 2;
}

std::shared_ptr<const Dbuta> build_btau() {
    return std::make_shared<TypeAutomaton>();
}

size_t SubsetAutomaton::SetHash::operator()(const Set& s) const {
    size_t h = s.quad ? 0x51ed27 : 0x2545f491;
    for (uint64_t x : s.elems) h ^= std::hash<uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

SubsetAutomaton::SubsetAutomaton(Nsta a) : nsta_(std::move(a)) {
    nsta_.normalize();
    by_middle_.resize(nsta_.m);
    for (const auto& t : nsta_.delta) by_middle_[t[1]].push_back({t[0], t[2]});
    sets_.push_back({false, {}});  // placeholder for failure
}

State SubsetAutomaton::intern(Set s) const {
    if (auto it = ids_.find(s); it != ids_.end()) return it->second;
    auto id = static_cast<State>(sets_.size());
    sets_.push_back(s);
    ids_.emplace(std::move(s), id);
    // reachable states never exceed 2^{m^2} + 2^{m^4} + 1
    uint64_t m2 = uint64_t(nsta_.m) * nsta_.m;
    if (m2 < 16) {
        uint64_t bound = (uint64_t(1) << m2) + (m2 * m2 < 63 ? (uint64_t(1) << (m2 * m2)) : UINT64_MAX / 2) + 1;
        if (sets_.size() > bound) throw std::logic_error("subset automaton exceeded its state bound");
    }
    return id;
}

State SubsetAutomaton::leaf(Symbol a, bool ctx, bool selected) const {
    uint64_t key = (uint64_t(a.id()) << 2) | (ctx ? 2 : 0) | (selected ? 1 : 0);
    {
        std::lock_guard lock(mu_);
        if (auto it = leaf_memo_.find(key); it != leaf_memo_.end()) return it->second;
    }
    const auto& init = nsta_.iota_of(a, selected);
    uint64_t m = nsta_.m;
    Set s{ctx, {}};
    if (!ctx) {
        for (uint32_t q : init)
            for (auto [p1, p2] : by_middle_[q]) s.elems.push_back(p1 * m + p2);
    } else {
        for (uint32_t p4 = 0; p4 < m; ++p4)
            for (auto [p1, p2] : by_middle_[p4])
                for (uint32_t p3 : init) s.elems.push_back(((p1 * m + p2) * m + p3) * m + p4);
    }
    std::sort(s.elems.begin(), s.elems.end());
    s.elems.erase(std::unique(s.elems.begin(), s.elems.end()), s.elems.end());
    std::lock_guard lock(mu_);
    State q = intern(std::move(s));
    leaf_memo_.emplace(key, q);
    return q;
}

SubsetAutomaton::Set SubsetAutomaton::compute(const Set& l, const Set& r, Op op) const {
    const uint64_t m = nsta_.m, m2 = m * m, m3 = m2 * m;
    Set out{false, {}};
    auto range = [](const std::vector<uint64_t>& v, uint64_t lo, uint64_t hi) {
        return std::make_pair(std::lower_bound(v.begin(), v.end(), lo), std::lower_bound(v.begin(), v.end(), hi));
    };
    if (op == Op::HC && !l.quad && !r.quad) {
        for (uint64_t x : l.elems) {
            uint64_t p1 = x / m, p2 = x % m;
            auto [b, e] = range(r.elems, p2 * m, p2 * m + m);
            for (auto it = b; it != e; ++it) out.elems.push_back(p1 * m + *it % m);
        }
    } else if (op == Op::HC && !l.quad && r.quad) {
        out.quad = true;
        for (uint64_t x : l.elems) {
            uint64_t p1 = x / m, p2 = x % m;
            auto [b, e] = range(r.elems, p2 * m3, (p2 + 1) * m3);
            for (auto it = b; it != e; ++it) out.elems.push_back(p1 * m3 + *it % m3);
        }
    } else if (op == Op::HC && l.quad && !r.quad) {
        out.quad = true;
        for (uint64_t x : l.elems) {
            uint64_t p1 = x / m3, p2 = x / m2 % m, rest = x % m2;
            auto [b, e] = range(r.elems, p2 * m, p2 * m + m);
            for (auto it = b; it != e; ++it) out.elems.push_back((p1 * m + *it % m) * m2 + rest);
        }
    } else if (op == Op::VC && l.quad && !r.quad) {
        for (uint64_t x : l.elems)
            if (std::binary_search(r.elems.begin(), r.elems.end(), x % m2)) out.elems.push_back(x / m2);
    } else if (op == Op::VC && l.quad && r.quad) {
        out.quad = true;
        for (uint64_t x : l.elems) {
            uint64_t head = x / m2, mid = x % m2;
            auto [b, e] = range(r.elems, mid * m2, (mid + 1) * m2);
            for (auto it = b; it != e; ++it) out.elems.push_back(head * m2 + *it % m2);
        }
    } else {
        throw std::out_of_range("failure");
    }
    std::sort(out.elems.begin(), out.elems.end());
    out.elems.erase(std::unique(out.elems.begin(), out.elems.end()), out.elems.end());
    return out;
}

State SubsetAutomaton::step(State l, State r, Op op) const {
    if (l == 0 || r == 0) return 0;
    uint64_t key = (uint64_t(l) << 33) | (uint64_t(r) << 1) | (op == Op::VC ? 1 : 0);
    std::lock_guard lock(mu_);
    if (auto it = step_memo_.find(key); it != step_memo_.end()) return it->second;
    const Set& a = sets_[l];
    const Set& b = sets_[r];
    bool defined = op == Op::HC ? !(a.quad && b.quad) : a.quad;
    State q = defined ? intern(compute(a, b, op)) : 0;
    step_memo_.emplace(key, q);
    return q;
}

bool SubsetAutomaton::accepting(State q) const {
    if (q == 0) return false;
    std::lock_guard lock(mu_);
    const Set& s = sets_[q];
    return !s.quad && std::binary_search(s.elems.begin(), s.elems.end(), uint64_t(nsta_.q0) * nsta_.m + nsta_.qf);
}

std::size_t SubsetAutomaton::state_count() const {
    std::lock_guard lock(mu_);
    return sets_.size();
}

bool SubsetAutomaton::is_quad(State q) const {
    std::lock_guard lock(mu_);
    return q != 0 && sets_[q].quad;
}

std::vector<uint64_t> SubsetAutomaton::elements(State q) const {
    std::lock_guard lock(mu_);
    return q == 0 ? std::vector<uint64_t>{} : sets_[q].elems;
}

std::string SubsetAutomaton::describe(State q) const {
    if (q == 0) return "failure";
    std::lock_guard lock(mu_);
    const Set& s = sets_[q];
    const uint64_t m = nsta_.m;
    std::string out = "{";
    for (std::size_t i = 0; i < s.elems.size(); ++i) {
        uint64_t x = s.elems[i];
        if (i) out += ",";
        if (s.quad)
            out += "<" + std::to_string(x / (m * m * m)) + "," + std::to_string(x / (m * m) % m) + "," +
                   std::to_string(x / m % m) + "," + std::to_string(x % m) + ">";
        else
            out += "<" + std::to_string(x / m) + "," + std::to_string(x % m) + ">";
    }
    return out + "}";
}

std::shared_ptr<const SubsetAutomaton> nsta_to_dbuta(const Nsta& a) {
    return std::make_shared<SubsetAutomaton>(a);
}

State dbuta_run(const Dbuta& b, const Expr& e, const std::vector<bool>& leaf_selected) {
    std::vector<State> q(e.size());
    std::size_t leaf = 0;
    for (uint32_t i = 0; i < e.size(); ++i) {
        const auto& n = e.nodes()[i];
        switch (n.kind) {
            case ExprKind::Leaf:
            case ExprKind::LeafCtx: {
                bool sel = leaf < leaf_selected.size() && leaf_selected[leaf];
                q[i] = b.leaf(n.label, n.kind == ExprKind::LeafCtx, sel);
                ++leaf;
                break;
            }
            case ExprKind::HC: q[i] = b.step(q[n.left], q[n.right], Op::HC); break;
            case ExprKind::VC: q[i] = b.step(q[n.left], q[n.right], Op::VC); break;
        }
    }
    return q[e.root()];
}

std::vector<State> dbuta_run_nodes(const Dbuta& b, const Fslp& g) {
    std::vector<State> q(g.size());
    for (uint32_t i = 0; i < g.size(); ++i) {
        const NodeDef& d = g[i];
        if (d.is_leaf())
            q[i] = b.leaf(d.label, d.kind == NodeKind::LeafCtx, false);
        else
            q[i] = b.step(q[d.left], q[d.right], d.kind == NodeKind::HC ? Op::HC : Op::VC);
    }
    return q;
}

Symbol tuple_label(Symbol a, uint32_t i) {
    return Symbol::intern("(" + a.name() + "," + std::to_string(i) + ")");
}

MultivarReduction multivar_reduce(const Fslp& g, uint32_t k) {
    if (k < 2) throw InvalidInput("multivar_reduce needs k >= 2");
    MultivarReduction out;
    out.k = k;
    std::map<Symbol, std::pair<bool, bool>> used;  // label -> (as leaf, as context leaf)
    for (const auto& d : g.nodes()) {
        if (d.kind == NodeKind::Leaf) used[d.label].first = true;
        if (d.kind == NodeKind::LeafCtx) used[d.label].second = true;
    }
    std::map<Symbol, std::pair<uint32_t, uint32_t>> run;  // label -> (forest run, context run)
    Fslp& h = out.fslp;
    for (const auto& [a, how] : used) {
        // prefix[j] = (a,1)...(a,j+1)
        uint32_t prefix = h.add(NodeDef::leaf(tuple_label(a, 1)));
        uint32_t before_last = prefix;
        for (uint32_t i = 2; i <= k; ++i) {
            if (i == k) before_last = prefix;
            uint32_t l = h.add(NodeDef::leaf(tuple_label(a, i)));
            if (i == k && !how.first) break;
            prefix = h.add(NodeDef::hc(prefix, l));
        }
        uint32_t ctx = kNone;
        if (how.second) {
            uint32_t last = h.add(NodeDef::leaf_ctx(tuple_label(a, k)));
            ctx = h.add(NodeDef::hc(before_last, last));
        }
        run[a] = {prefix, ctx};
    }
    out.added_nodes = h.size();
    out.node_map.resize(g.size());
    for (uint32_t i = 0; i < g.size(); ++i) {
        const NodeDef& d = g[i];
        if (d.kind == NodeKind::Leaf)
            out.node_map[i] = run[d.label].first;
        else if (d.kind == NodeKind::LeafCtx)
            out.node_map[i] = run[d.label].second;
        else
            out.node_map[i] = h.add({d.kind, Symbol(), out.node_map[d.left], out.node_map[d.right]});
    }
    for (uint32_t r : g.roots) h.roots.push_back(out.node_map[r]);
    return out;
}

std::vector<std::vector<BigNat>> MultivarReduction::decode(const std::vector<BigNat>& solution) const {
    std::vector<std::vector<BigNat>> out(k);
    for (const BigNat& m : solution) out[static_cast<std::size_t>(m % k)].push_back(m / k);
    for (auto& s : out) std::sort(s.begin(), s.end());
    return out;
}

}  // namespace slpenum
