#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "depa/degeneration.hpp"
#include "depa/parse.hpp"
#include "depa/preprojective.hpp"
#include "depa/repvariety.hpp"
#include "depa/rewrite.hpp"

namespace py = pybind11;
using namespace depa;

namespace {

DecoratedQuiver quiver_of(const std::string& text, long long field) {
    std::istringstream in(text);
    return parse_quiver_spec(in, field);
}

SignConvention signs_of(const std::string& s) {
    if (s == "plus") return SignConvention::AllPlus;
    if (s == "signed") return SignConvention::Signed;
    throw Error("InputError", "signs must be 'plus' or 'signed'");
}

py::dict series_dict(const DecoratedQuiver& dq, HilbertSeries& h) {
    py::dict blocks;
    for (int i : dq.quiver.vertices)
        for (int j : dq.quiver.vertices) {
            py::dict entry;
            for (int n = 0; n <= h.top_degree; ++n)
                for (const auto& [s2, dim] : h.bidims(n, i, j))
                    entry[py::make_tuple(n, s2)] = dim;
            blocks[py::make_tuple(i, j)] = entry;
        }
    py::list dims;
    for (int n = 0; n <= h.top_degree; ++n) dims.append(h.dim(n));
    py::dict out;
    out["stabilized"] = h.stabilized;
    out["top_degree"] = h.top_degree;
    out["dims"] = dims;
    out["blocks"] = blocks;
    out["total"] = h.stabilized ? py::cast(h.total()) : py::none();
    return out;
}

py::dict hilbert_py(const std::string& spec, long long field, int cutoff,
                    const std::string& signs) {
    auto dq = quiver_of(spec, field);
    PiContext pi(dq, signs_of(signs), cutoff);
    auto h = pi.hilbert();
    return series_dict(dq, h);
}

long long total_dimension_py(const std::string& spec, long long field) {
    auto dq = quiver_of(spec, field);
    PiContext pi(dq);
    return total_dimension(pi);
}

py::dict flatness_py(const std::string& deformed, const std::string& degenerate,
                     long long field, int cutoff) {
    auto rep = flatness_check(quiver_of(deformed, field),
                              quiver_of(degenerate, field), cutoff);
    py::dict out;
    out["blockwise"] = rep.blockwise;
    out["bigraded"] = rep.bigraded;
    out["stabilization_match"] = rep.stabilization_match;
    out["flat"] = rep.flat;
    out["cutoff"] = rep.cutoff;
    if (rep.first_difference) {
        py::dict fd;
        fd["t"] = rep.first_difference->t;
        fd["s_half"] = rep.first_difference->s_half;
        fd["block"] = py::make_tuple(rep.first_difference->i, rep.first_difference->j);
        fd["left_dim"] = rep.first_difference->left_dim;
        fd["right_dim"] = rep.first_difference->right_dim;
        out["first_difference"] = fd;
    } else {
        out["first_difference"] = py::none();
    }
    return out;
}

py::dict confluence_py(const std::string& rules, long long field, int bound) {
    std::istringstream in(rules);
    auto rs = parse_rule_system(in, field, bound);
    auto done = rs.completed();
    py::dict out;
    out["confluent"] = done.is_confluent();
    out["input_rules"] = static_cast<int>(rs.rules().size());
    out["completed_rules"] = static_cast<int>(done.rules().size());
    out["bound"] = done.degree_bound();
    out["irreducible_total"] = done.irreducible_total(done.degree_bound());
    py::list rlist;
    for (const auto& r : done.rules()) rlist.append(done.rule_str(r));
    out["rules"] = rlist;
    return out;
}

py::dict moment_check_py(const std::string& spec, const std::vector<int>& dims,
                         int seeds, long long field, unsigned base_seed) {
    auto dq = quiver_of(spec, field);
    if (dims.size() != dq.quiver.vertices.size())
        throw Error("InputError", "need one dimension per vertex");
    auto dd = double_quiver(dq);
    std::map<int, int> d;
    for (size_t i = 0; i < dims.size(); ++i) d[dq.quiver.vertices[i]] = dims[i];
    TensorContext ctx(dd);
    WordCombo r = relation_element(ctx, SignConvention::Signed);
    bool all_equal = true;
    int first_mismatch = -1;
    for (int s = 0; s < seeds; ++s) {
        auto rep = random_representation(dd, d, base_seed + static_cast<unsigned>(s));
        if (!(evaluate_relation(dd, rep, ctx, r) == moment_map_via_pairing(dd, rep))) {
            all_equal = false;
            first_mismatch = s;
            break;
        }
    }
    py::dict out;
    out["all_equal"] = all_equal;
    out["seeds"] = seeds;
    out["first_mismatch"] =
        all_equal ? py::none() : py::cast(first_mismatch);
    return out;
}

py::dict center_py(const std::string& spec, long long field) {
    auto dq = quiver_of(spec, field);
    PiContext pi(dq);
    py::dict out;
    for (const auto& [deg, dim] : center_dims(pi)) out[py::cast(deg)] = dim;
    return out;
}

py::dict pairing_py(const std::string& spec, long long field) {
    auto dq = quiver_of(spec, field);
    PiContext pi(dq);
    auto pr = frobenius_pairing(pi);
    py::dict out;
    out["dim"] = pr.dim;
    out["rank"] = pr.rank;
    out["nondegenerate"] = pr.nondegenerate;
    out["symmetric"] = pr.symmetric;
    return out;
}

}  // namespace

PYBIND11_MODULE(_depa, m) {
    m.doc() = "graded quotients of decorated path algebras";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("hilbert", &hilbert_py, py::arg("spec"), py::arg("field") = 0,
          py::arg("cutoff") = -1, py::arg("signs") = "plus",
          "Bigraded dimension series of the quotient algebra of a quiver spec.\n"
          "Blocks are keyed by vertex pair; entries by (path degree, doubled "
          "x-degree).");
    m.def("total_dimension", &total_dimension_py, py::arg("spec"),
          py::arg("field") = 0);
    m.def("flatness", &flatness_py, py::arg("deformed"), py::arg("degenerate"),
          py::arg("field") = 0, py::arg("cutoff") = -1,
          "Compare the series of a deformed decoration against a degenerate one.");
    m.def("confluence", &confluence_py, py::arg("rules"), py::arg("field") = 0,
          py::arg("bound") = -1,
          "Complete a rewriting system from rule-file text and report it.");
    m.def("moment_check", &moment_check_py, py::arg("spec"), py::arg("dims"),
          py::arg("seeds") = 20, py::arg("field") = 0, py::arg("base_seed") = 0,
          "Check moment map vs relation evaluation on seeded representations.");
    m.def("center", &center_py, py::arg("spec"), py::arg("field") = 0,
          "Graded dimensions of the center of the quotient algebra.");
    m.def("frobenius_pairing", &pairing_py, py::arg("spec"), py::arg("field") = 0,
          "Gram rank report of the top-degree pairing.");
}
