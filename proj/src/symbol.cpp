#include "slpenum/symbol.hpp"
#include "slpenum/error.hpp"

#include <cstdlib>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace slpenum {

namespace {

struct Interner {
    std::mutex mu;
    std::deque<std::string> names{std::string("?")};
    std::unordered_map<std::string, uint32_t> ids{{"?", 0}};
};

Interner& interner() {
    static Interner in;
    return in;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
    auto& in = interner();
    std::lock_guard lock(in.mu);
    auto it = in.ids.find(std::string(name));
    if (it != in.ids.end()) return Symbol(it->second);
    auto id = static_cast<uint32_t>(in.names.size());
    in.names.emplace_back(name);
    in.ids.emplace(std::string(name), id);
    return Symbol(id);
}

std::string Symbol::name() const {
    auto& in = interner();
    std::lock_guard lock(in.mu);
    return in.names[id_];
}

std::size_t default_budget() {
    if (const char* env = std::getenv("SLPENUM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
}

}  // namespace slpenum
