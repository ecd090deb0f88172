#include "slpenum/generators.hpp"
#include "slpenum/mso_enum.hpp"
#include "slpenum/oracle.hpp"
#include "slpenum/updates.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace slpenum;

namespace {

py::int_ to_py(const BigNat& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigNat from_py(const py::int_& v) {
    std::string s = py::repr(v);
    if (!s.empty() && s[0] == '-') throw InvalidInput("expected a non-negative integer");
    return BigNat(s);
}

py::list to_py(std::vector<BigNat> s) {
    std::sort(s.begin(), s.end());
    py::list out;
    for (const auto& x : s) out.append(to_py(x));
    return out;
}

uint32_t default_root(const Fslp& g, std::optional<uint32_t> v) {
    if (v) {
        if (*v >= g.size()) throw InvalidInput("unknown vertex " + std::to_string(*v));
        return *v;
    }
    if (g.roots.empty()) throw InvalidInput("no vertex given and the f-SLP has no roots");
    return g.roots.front();
}

struct Stream {
    std::shared_ptr<const EnumDataStructure> eds;
    AnswerStream s;
    std::size_t left;
};

class Index {
public:
    Index(const Fslp& g, const Nsta& a) : eds_(std::make_shared<EnumDataStructure>(build_enum(g, a))) {}

    Stream enumerate(std::optional<uint32_t> vertex, std::optional<std::size_t> limit) {
        uint32_t v = forest_root(vertex);
        return Stream{eds_, eds_->enumerate(v), limit.value_or(SIZE_MAX)};
    }

    py::list select(std::optional<uint32_t> vertex) {
        py::list out;
        for (auto& s : enumerate_select(*eds_, forest_root(vertex))) out.append(to_py(std::move(s)));
        return out;
    }

    bool has_empty_solution(std::optional<uint32_t> vertex) { return eds_->check_empty_solution(forest_root(vertex)); }

    py::tuple relabel(std::optional<uint32_t> vertex, const py::int_& k, const std::string& symbol) {
        uint32_t a = forest_root(vertex);
        if (eds_.use_count() > 1) eds_ = std::make_shared<EnumDataStructure>(*eds_);
        auto r = slpenum::relabel(*eds_, a, from_py(k), Symbol::intern(symbol));
        return py::make_tuple(r.new_root, r.added);
    }

    Fslp fslp() const { return eds_->fslp(); }
    std::size_t product_size() const { return eds_->product_size(); }
    std::size_t state_count() const { return eds_->automaton().state_count(); }

private:
    uint32_t forest_root(std::optional<uint32_t> vertex) const {
        uint32_t v = default_root(eds_->fslp(), vertex);
        if (eds_->stats().tau[v] != 0) throw InvalidInput("vertex " + std::to_string(v) + " is a context");
        return v;
    }
    std::shared_ptr<EnumDataStructure> eds_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Enumeration of tree-automaton query answers over forest straight-line programs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<Fslp>(m, "Fslp")
        .def_static("parse", [](const std::string& text) { return read_fslp(text); })
        .def_static("compress", [](const std::string& term) { return compress_forest(parse_term(term)); })
        .def("to_text", &write_fslp)
        .def("__len__", &Fslp::size)
        .def_property_readonly("roots", [](const Fslp& g) { return g.roots; })
        .def("decompress",
             [](const Fslp& g, std::optional<uint32_t> v) { return serialize_term(evaluate(g, default_root(g, v))); },
             py::arg("vertex") = py::none())
        .def(
            "stats",
            [](const Fslp& g, std::optional<uint32_t> v) {
                auto st = compute_stats(g);
                uint32_t a = default_root(g, v);
                py::dict d;
                d["tau"] = st.tau[a];
                d["s"] = to_py(st.s[a]);
                d["ell"] = to_py(st.ell[a]);
                d["n"] = to_py(st.n[a]);
                d["height"] = st.height[a];
                return d;
            },
            py::arg("vertex") = py::none())
        .def(
            "preorder_to_path",
            [](const Fslp& g, std::optional<uint32_t> v, const py::int_& k) {
                auto st = compute_stats(g);
                return format_path(preorder_to_path(g, st, default_root(g, v), from_py(k)));
            },
            py::arg("vertex"), py::arg("k"))
        .def("__eq__", [](const Fslp& a, const Fslp& b) { return a == b; });

    py::class_<Nsta>(m, "Nsta")
        .def_static("parse", [](const std::string& text) { return read_nsta(text); })
        .def("to_text", &write_nsta)
        .def_readonly("states", &Nsta::m)
        .def(
            "accepts",
            [](const Nsta& a, const std::string& term, const std::vector<uint32_t>& selected) {
                Forest f = parse_term(term);
                std::vector<bool> sel(f.size());
                for (uint32_t v : selected) {
                    if (v >= f.size()) throw InvalidInput("vertex " + std::to_string(v) + " is not in the forest");
                    sel[v] = true;
                }
                return nsta_accepts(a, f, sel);
            },
            py::arg("term"), py::arg("selected") = std::vector<uint32_t>{});

    py::class_<Stream>(m, "AnswerStream")
        .def("__iter__", [](Stream& s) -> Stream& { return s; })
        .def("__next__", [](Stream& s) {
            if (s.left == 0) throw py::stop_iteration();
            auto ans = s.s.next();
            if (!ans) throw py::stop_iteration();
            --s.left;
            return to_py(std::move(*ans));
        })
        .def_property_readonly("last_steps", [](const Stream& s) { return s.s.last_steps(); })
        .def_property_readonly("witness_size", [](const Stream& s) { return s.s.witness_size(); });

    py::class_<Index>(m, "Index")
        .def(py::init<const Fslp&, const Nsta&>(), py::arg("fslp"), py::arg("query"))
        .def("enumerate", &Index::enumerate, py::arg("vertex") = py::none(), py::arg("limit") = py::none())
        .def("select", &Index::select, py::arg("vertex") = py::none())
        .def("has_empty_solution", &Index::has_empty_solution, py::arg("vertex") = py::none())
        .def("relabel", &Index::relabel, py::arg("vertex"), py::arg("k"), py::arg("symbol"))
        .def_property_readonly("fslp", &Index::fslp)
        .def_property_readonly("product_size", &Index::product_size)
        .def_property_readonly("state_count", &Index::state_count);

    m.def(
        "brute_select",
        [](const Nsta& a, const std::string& term) { return brute_select(a, parse_term(term)); },
        py::arg("query"), py::arg("term"));
    m.def("select_label_query", [](const std::string& label) { return select_label_nsta(Symbol::intern(label)); });
    m.def("select_one_query", &select_one_nsta);
}
