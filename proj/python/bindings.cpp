#include <memory>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlelcs/dyn_array.hpp"
#include "rlelcs/errors.hpp"
#include "rlelcs/reductions.hpp"
#include "rlelcs/reference.hpp"
#include "rlelcs/walk.hpp"

namespace py = pybind11;
using namespace rlelcs;

namespace {

// Strings cross the boundary in the RLE text format.
RleString in(const std::string& text) { return parse_rle(text); }

SolverConfig make_config(const std::string& mode, const std::string& anchors, std::uint64_t seed, std::int64_t d_min) {
  SolverConfig c;
  c.mode = parse_walk_mode(mode);
  c.scheme = parse_anchor_scheme(anchors);
  c.seed = seed;
  c.d_min = d_min;
  return c;
}

std::string solve_json(const std::string& a, const std::string& b, const std::string& mode, const std::string& anchors,
                       std::uint64_t seed, std::int64_t d_min) {
  const SolverConfig config = make_config(mode, anchors, seed, d_min);
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle ha(in(a), ledger);
  const OracleHandle hb(in(b), ledger);
  return answer_to_json(solve_lcs_rle_p(ha, hb, config), *ledger);
}

std::string solve_lrs_json(const std::string& a, const std::string& mode, const std::string& anchors,
                           std::uint64_t seed, std::int64_t d_min) {
  const SolverConfig config = make_config(mode, anchors, seed, d_min);
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle ha(in(a), ledger);
  return answer_to_json(solve_lrs(ha, config), *ledger);
}

py::dict parity_dict(const ParityRun& r) {
  py::dict d;
  d["parity"] = r.parity;
  d["calls"] = r.calls;
  d["k_prime"] = r.k_prime;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Longest common substring of run-length encoded strings";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
  py::register_exception<ReductionError>(m, "ReductionError", PyExc_RuntimeError);
  py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);

  m.def("encode", [](const py::bytes& raw) { return format_rle(encode(std::string(raw))); }, py::arg("raw"));
  m.def("decode", [](const std::string& text) { return py::bytes(decode(in(text))); }, py::arg("rle"));
  m.def(
      "runs",
      [](const std::string& text) {
        py::list out;
        const RleString s = in(text);
        for (const Run& r : s.runs()) out.append(py::make_tuple(static_cast<int>(r.ch), r.len));
        return out;
      },
      py::arg("rle"));
  m.def("decoded_length", [](const std::string& text) { return in(text).decoded_length(); }, py::arg("rle"));

  m.def(
      "brute_lcs",
      [](const std::string& a, const std::string& b) {
        const BruteLcs r = brute_lcs(in(a), in(b));
        py::dict d;
        d["length"] = r.length;
        d["start_a"] = r.start_a;
        d["start_b"] = r.start_b;
        d["encoded_length"] = r.encoded_length;
        return d;
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "brute_lrs",
      [](const std::string& a) {
        const BruteLrs r = brute_lrs(in(a));
        py::dict d;
        d["length"] = r.length;
        d["start_1"] = r.start_1;
        d["start_2"] = r.start_2;
        return d;
      },
      py::arg("a"));

  m.def("solve_json", &solve_json, py::arg("a"), py::arg("b"), py::arg("mode") = "fullset",
        py::arg("anchors") = "exhaustive", py::arg("seed") = 1, py::arg("d_min") = 8);
  m.def("solve_lrs_json", &solve_lrs_json, py::arg("a"), py::arg("mode") = "fullset",
        py::arg("anchors") = "exhaustive", py::arg("seed") = 1, py::arg("d_min") = 8);

  m.def("gadget_dl", [](const std::string& bits) { return format_rle(gadget_dl(ParityInstance::from_string(bits))); },
        py::arg("bits"));
  m.def(
      "gadget_el",
      [](const std::string& bits, std::int64_t k, const std::string& sep) {
        if (sep.size() != 1) throw ParameterError("separator must be one character");
        return format_rle(gadget_el(ParityInstance::from_string(bits), k, static_cast<Symbol>(sep[0])));
      },
      py::arg("bits"), py::arg("k"), py::arg("sep") = "@");
  m.def(
      "parity_via_dl",
      [](const std::string& bits) {
        return parity_dict(parity_via_dl(ParityInstance::from_string(bits),
                                         [](const RleString& s, const RleString& t) { return brute_lcs(s, t).length; }));
      },
      py::arg("bits"));
  m.def(
      "parity_via_el",
      [](const std::string& bits) {
        return parity_dict(parity_via_el(ParityInstance::from_string(bits), [](const RleString& s, const RleString& t) {
          return brute_lcs(s, t).encoded_length;
        }));
      },
      py::arg("bits"));
  m.def("pad_interleave", [](const std::string& text) { return format_rle(pad_interleave(in(text))); },
        py::arg("rle"));

  py::class_<DynArray>(m, "DynArray")
      .def(py::init<>())
      .def("__len__", &DynArray::size)
      .def("insert", [](DynArray& a, std::int64_t i, std::int64_t key, std::int64_t value) { a.insert(i, {key, value}); },
           py::arg("i"), py::arg("key"), py::arg("value"))
      .def("erase", &DynArray::erase, py::arg("i"))
      .def("index", &DynArray::index, py::arg("i"))
      .def("locate", &DynArray::locate, py::arg("key"))
      .def("range_min", &DynArray::range_min, py::arg("a"), py::arg("b"))
      .def("to_list", &DynArray::to_vector)
      .def("serialize", &DynArray::serialize);
}
