#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relmatch/classify.hpp"
#include "relmatch/engines.hpp"
#include "relmatch/meter.hpp"
#include "relmatch/nonlocal.hpp"
#include "relmatch/protocols.hpp"

namespace py = pybind11;
using namespace relmatch;

namespace {

py::dict transcript_dict(const ProtocolTranscript& t) {
    py::dict d;
    d["problem"] = t.problem;
    d["reduction"] = t.reduction;
    d["m"] = t.m;
    d["message_bits"] = t.message_bits;
    d["answer"] = t.answer;
    d["expected"] = t.expected;
    d["correct"] = t.correct;
    return d;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> run_match(
    Engine& engine, const std::function<std::int64_t(const std::string&)>& enc,
    const std::vector<std::string>& stream) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    std::uint64_t i = 0;
    for (const auto& tok : stream) {
        if (auto v = engine.push(enc(tok))) out.emplace_back(i, *v);
        ++i;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streaming sliding-window pattern matching: relation "
              "classification, baseline and sublinear engines, protocol "
              "reductions and state metering";

    py::class_<DeltaMatrix>(m, "DeltaMatrix")
        .def("to_json", &serialize_delta_matrix)
        .def("rows", &DeltaMatrix::rows)
        .def("cols", &DeltaMatrix::cols)
        .def("is_boolean", &DeltaMatrix::is_boolean)
        .def("delta", &DeltaMatrix::at_tokens, py::arg("pattern_symbol"),
             py::arg("text_symbol"))
        .def("__eq__", [](const DeltaMatrix& a, const DeltaMatrix& b) {
            return a == b;
        });

    m.def("load_matrix", &load_delta_matrix, py::arg("json_text"),
          "Parse a matrix JSON document");

    m.def(
        "classify_json",
        [](const DeltaMatrix& matrix, const std::string& op) {
            const auto report = classify(matrix, operator_from_name(op));
            return report_to_json(report, matrix);
        },
        py::arg("matrix"), py::arg("op"),
        "Classification report as a JSON string");

    m.def(
        "validity",
        [](const DeltaMatrix& matrix, const std::string& op) {
            return validity(matrix, operator_from_name(op));
        },
        py::arg("matrix"), py::arg("op"));

    m.def(
        "match_stream",
        [](const DeltaMatrix& matrix, const std::string& op,
           const std::vector<std::string>& pattern,
           const std::vector<std::string>& stream, const std::string& engine,
           std::uint64_t seed) {
            const OperatorKind kind = operator_from_name(op);
            const Pattern p = make_pattern(matrix.pattern_alphabet(), pattern);
            auto encode = [&matrix](const std::string& tok) {
                return static_cast<std::int64_t>(matrix.text_alphabet().id(tok));
            };
            if (engine == "sublinear") {
                const bool is_or = kind == OperatorKind::Or;
                if (kind != OperatorKind::And && !is_or)
                    throw RelationError(
                        "sublinear engines exist for AND/OR only");
                ConjunctionEngine e(is_or ? matrix.negated() : matrix, p, seed);
                auto out = run_match(e, encode, stream);
                if (is_or)
                    for (auto& [i, v] : out) v = v != 0 ? 0 : 1;
                return out;
            }
            std::vector<std::int64_t> codes(p.ids.begin(), p.ids.end());
            RingEngine e(Relation::from_matrix(matrix), kind, std::move(codes));
            return run_match(e, encode, stream);
        },
        py::arg("matrix"), py::arg("op"), py::arg("pattern"), py::arg("stream"),
        py::arg("engine") = "baseline", py::arg("seed") = 1,
        "Run a stream through an engine; returns (end_index, value) pairs");

    m.def(
        "match_edit",
        [](const std::string& pattern, const std::string& stream) {
            std::vector<std::int64_t> codes;
            for (char c : pattern)
                codes.push_back(static_cast<unsigned char>(c));
            EditEngine e(std::move(codes), 8);
            std::vector<std::pair<std::uint64_t, std::int64_t>> out;
            for (std::size_t i = 0; i < stream.size(); ++i)
                if (auto v = e.push(static_cast<unsigned char>(stream[i])))
                    out.emplace_back(i, *v);
            return out;
        },
        py::arg("pattern"), py::arg("stream"));

    m.def(
        "match_swap",
        [](const std::string& pattern, const std::string& stream) {
            std::vector<std::int64_t> codes;
            for (char c : pattern)
                codes.push_back(static_cast<unsigned char>(c));
            SwapEngine e(std::move(codes), 8);
            std::vector<std::pair<std::uint64_t, std::int64_t>> out;
            for (std::size_t i = 0; i < stream.size(); ++i)
                if (auto v = e.push(static_cast<unsigned char>(stream[i])))
                    out.emplace_back(i, *v);
            return out;
        },
        py::arg("pattern"), py::arg("stream"));

    m.def("run_indexing_via_sum",
          [](const std::vector<int>& X, std::uint64_t n) {
              return transcript_dict(run_indexing_via_sum(X, n));
          });
    m.def("run_parity_indexing",
          [](const std::vector<int>& X, std::uint64_t n) {
              return transcript_dict(run_parity_indexing(X, n));
          });
    m.def("run_indexing_via_wildcard",
          [](const std::vector<int>& X, std::uint64_t n) {
              return transcript_dict(run_indexing_via_wildcard(X, n));
          });
    m.def("run_indexing_via_edit",
          [](const std::vector<int>& X, std::uint64_t n) {
              return transcript_dict(run_indexing_via_edit(X, n));
          });
    m.def(
        "run_equality",
        [](const std::vector<int>& X, const std::vector<int>& Y,
           const std::string& engine, std::uint64_t seed,
           unsigned amplification) {
            return transcript_dict(run_equality(
                X, Y,
                engine == "sublinear" ? EqualityEngine::Sublinear
                                      : EqualityEngine::Baseline,
                seed, amplification));
        },
        py::arg("X"), py::arg("Y"), py::arg("engine") = "exact",
        py::arg("seed") = 1, py::arg("amplification") = 1);
    m.def(
        "run_disjointness",
        [](const std::vector<std::uint64_t>& A,
           const std::vector<std::uint64_t>& B, std::uint64_t c,
           std::uint64_t universe, std::uint64_t seed) {
            return transcript_dict(run_disjointness(A, B, c, universe, seed));
        },
        py::arg("A"), py::arg("B"), py::arg("c"), py::arg("universe"),
        py::arg("seed"));

    m.def("meter_engine_ids", [] { return meter_engine_ids(); });
    m.def(
        "measure",
        [](const std::string& engine_id, const std::vector<std::uint64_t>& ms,
           std::uint64_t seed) {
            py::list out;
            for (const auto& s : measure(engine_id, ms, seed)) {
                py::dict d;
                d["engine_id"] = s.engine_id;
                d["m"] = s.m;
                d["state_bits"] = s.state_bits;
                out.append(d);
            }
            return out;
        },
        py::arg("engine_id"), py::arg("ms"), py::arg("seed") = 1);
    m.def(
        "fit_growth",
        [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points) {
            std::vector<SpaceSample> samples;
            for (auto [m_, bits] : points) samples.push_back({"", m_, bits});
            const GrowthFit f = fit_growth(samples);
            py::dict d;
            d["slope"] = f.slope;
            d["intercept"] = f.intercept;
            d["r2"] = f.r2;
            return d;
        },
        py::arg("points"), "Fit log(bits) vs log(m); points are (m, bits)");

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SymbolError>(m, "SymbolError", PyExc_KeyError);
    py::register_exception<RelationError>(m, "RelationError", PyExc_ValueError);
    py::register_exception<StateError>(m, "StateError", PyExc_ValueError);

    m.attr("__version__") = "0.1.0";
}
