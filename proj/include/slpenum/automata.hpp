#pragma once

#include "slpenum/forest.hpp"
#include "slpenum/fslp.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slpenum {

using State = uint32_t;

// Nondeterministic stepwise tree automaton over labels x {0,1}.
struct Nsta {
    uint32_t m = 1;
    std::vector<std::array<uint32_t, 3>> delta;  // (p, q, r): rho0, rho1, rhof
    std::map<std::pair<Symbol, bool>, std::vector<uint32_t>> iota;
    // Used for labels without any explicit iota line (`iota * <bit> ...`).
    std::optional<std::array<std::vector<uint32_t>, 2>> iota_default;
    uint32_t q0 = 0;
    uint32_t qf = 0;

    // Sorts and deduplicates delta and iota; validates state ranges.
    void normalize();
    bool covers(Symbol a) const;
    // Empty when the label is covered but has no states for that bit; throws if uncovered.
    const std::vector<uint32_t>& iota_of(Symbol a, bool bit) const;
};

Nsta read_nsta(std::string_view text);
std::string write_nsta(const Nsta& a);

// `selected` is indexed by vertex (preorder); missing entries count as unselected.
bool nsta_accepts(const Nsta& a, const Forest& f, const std::vector<bool>& selected);

enum class Op : uint8_t { HC, VC };

// Deterministic bottom-up automaton over forest algebra expressions with selection bits on
// leaves. States are dense ids; evaluation may materialize new states (thread-safe).
class Dbuta {
public:
    virtual ~Dbuta() = default;
    virtual State leaf(Symbol a, bool ctx, bool selected) const = 0;
    virtual State step(State l, State r, Op op) const = 0;
    virtual bool accepting(State q) const = 0;
    virtual State failure() const = 0;
    virtual std::size_t state_count() const = 0;
    virtual bool covers(Symbol) const { return true; }
    virtual std::string describe(State q) const { return std::to_string(q); }
};

// Validity automaton: states 0, 1 and failure (2); accepts exactly the valid expressions.
class TypeAutomaton final : public Dbuta {
public:
    State leaf(Symbol, bool ctx, bool) const override { return ctx ? 1 : 0; }
    State step(State l, State r, Op op) const override;
    bool accepting(State q) const override { return q != 2; }
    State failure() const override { return 2; }
    std::size_t state_count() const override { return 3; }
    std::string describe(State q) const override { return q == 2 ? "failure" : std::to_string(q); }
};

std::shared_ptr<const Dbuta> build_btau();

// Lazy subset construction: states are pair-sets, quadruple-sets or failure.
class SubsetAutomaton final : public Dbuta {
public:
    explicit SubsetAutomaton(Nsta a);

    State leaf(Symbol a, bool ctx, bool selected) const override;
    State step(State l, State r, Op op) const override;
    bool accepting(State q) const override;
    State failure() const override { return 0; }
    std::size_t state_count() const override;
    bool covers(Symbol a) const override { return nsta_.covers(a); }
    std::string describe(State q) const override;

    const Nsta& nsta() const { return nsta_; }
    bool is_quad(State q) const;
    std::vector<uint64_t> elements(State q) const;

private:
    struct Set {
        bool quad;
        std::vector<uint64_t> elems;  // packed, sorted
        bool operator==(const Set&) const = default;
    };
    struct SetHash {
        size_t operator()(const Set& s) const;
    };

    State intern(Set s) const;
    Set compute(const Set& l, const Set& r, Op op) const;

    Nsta nsta_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> by_middle_;  // q -> (p, r) with (p,q,r) in delta
    mutable std::mutex mu_;
    mutable std::vector<Set> sets_;  // index 0 is failure
    mutable std::unordered_map<Set, State, SetHash> ids_;
    mutable std::unordered_map<uint64_t, State> step_memo_;
    mutable std::unordered_map<uint64_t, State> leaf_memo_;
};

std::shared_ptr<const SubsetAutomaton> nsta_to_dbuta(const Nsta& a);

// `leaf_selected` follows Expr::leaves() order.
State dbuta_run(const Dbuta& b, const Expr& e, const std::vector<bool>& leaf_selected);

// State of every f-SLP node with no leaf selected.
std::vector<State> dbuta_run_nodes(const Dbuta& b, const Fslp& g);

struct MultivarReduction {
    Fslp fslp;
    std::vector<uint32_t> node_map;  // old node id -> node of the reduced program
    uint32_t k = 2;
    std::size_t added_nodes = 0;

    // Splits a solution (preorder numbers) of the reduced forest into k sets.
    std::vector<std::vector<BigNat>> decode(const std::vector<BigNat>& solution) const;
};

// Each a-leaf becomes (a,1)...(a,k); each a*-leaf becomes (a,1)...(a,k-1)(a,k)*.
MultivarReduction multivar_reduce(const Fslp& g, uint32_t k);
Symbol tuple_label(Symbol a, uint32_t i);

}  // namespace slpenum
