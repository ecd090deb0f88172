#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace slpenum {

// Interned label. Ids are dense and stable for the lifetime of the process.
class Symbol {
public:
    Symbol() = default;

    static Symbol intern(std::string_view name);

    uint32_t id() const { return id_; }
    std::string name() const;

    friend bool operator==(Symbol, Symbol) = default;
    friend auto operator<=>(Symbol, Symbol) = default;

private:
    explicit Symbol(uint32_t id) : id_(id) {}
    uint32_t id_ = 0;
};

}  // namespace slpenum

template <>
struct std::hash<slpenum::Symbol> {
    size_t operator()(slpenum::Symbol s) const noexcept { return std::hash<uint32_t>{}(s.id()); }
};
