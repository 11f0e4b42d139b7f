#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "modspace/corpus.hpp"
#include "modspace/grid.hpp"
#include "modspace/inequality.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/partition.hpp"
#include "modspace/special.hpp"
#include "modspace/weight.hpp"
#include "modspace/weight_class.hpp"
#include "modspace/weight_sequence.hpp"

namespace py = pybind11;
using namespace modspace;

namespace {

WeightFunction weight_from(const std::string& spec) {
  return WeightFunction::builtin(BuiltinWeightSpec::parse(spec));
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

ConstantVariant variant_from(const std::string& name) {
  if (name == "rv_a") return ConstantVariant::rv_a;
  if (name == "rv_b") return ConstantVariant::rv_b;
  if (name == "sv") return ConstantVariant::sv;
  throw std::invalid_argument("unknown constant variant: " + name);
}

}  // namespace

PYBIND11_MODULE(pymodspace, m) {
  m.doc() = "Weighted modulation-space toolkit bindings";

  m.def(
      "weight_value",
      [](const std::string& spec, double x) { return weight_from(spec)(x); },
      py::arg("spec"), py::arg("x"));

  m.def(
      "weight_index",
      [](const std::string& spec) { return weight_from(spec).index_alpha(); },
      py::arg("spec"));

  m.def(
      "classify_weight",
      [](const std::string& spec, double t_max) {
        const WeightFunction w = weight_from(spec);
        const ClassReport rep =
            check_conditions(w, ProbeGrid::standard(t_max));
        py::dict verdicts;
        for (const auto& [key, cond] : rep.verdicts)
          verdicts[py::str(key)] = verdict_name(cond.verdict);
        py::dict out;
        out["subclass"] = rep.subclass;
        out["all_pass"] = rep.all_pass();
        out["alpha"] = rep.index.alpha;
        out["x_tilde"] = rep.thresholds.x_tilde;
        out["thresholds_valid"] = rep.thresholds.valid;
        out["verdicts"] = verdicts;
        return out;
      },
      py::arg("spec"), py::arg("t_max") = 1e6);

  m.def(
      "associated_sequence",
      [](const std::string& spec, int p_max, double r_cap) {
        const WeightSequence seq =
            associated_sequence(weight_from(spec), p_max, r_cap);
        py::dict out;
        out["log_values"] = seq.log_values;
        out["argmax_r"] = seq.argmax_r;
        out["any_capped"] = seq.any_capped();
        out["H"] = find_H(seq);
        out["convexity_violations"] = check_log_convexity(seq);
        return out;
      },
      py::arg("spec"), py::arg("p_max"), py::arg("r_cap") = 1e12);

  m.def("gamma_upper", &gamma_upper, py::arg("beta"), py::arg("t"));
  m.def("gamma_lower", &gamma_lower, py::arg("beta"), py::arg("t"));
  m.def("inverse_gamma_upper", &inverse_gamma_upper, py::arg("beta"),
        py::arg("u"));

  m.def(
      "subalgebra_constant",
      [](const std::string& variant, double R, int n, double q, double alpha,
         double s, double c, double delta, int N) {
        ConstantsParams params;
        params.variant = variant_from(variant);
        params.n = n;
        params.q = q;
        params.alpha = alpha;
        params.s = s;
        params.c = c;
        params.delta = delta;
        params.N = N;
        return subalgebra_constant(params, R).constant;
      },
      py::arg("variant"), py::arg("R"), py::arg("n") = 1, py::arg("q") = 2.0,
      py::arg("alpha") = 0.5, py::arg("s") = 0.5, py::arg("c") = 1.0,
      py::arg("delta") = 0.1, py::arg("N") = 3);

  m.def(
      "partition_defect",
      [](double plateau, int dim, double half_width, int samples) {
        const Grid grid = Grid::make(dim, half_width, samples);
        return verify_partition(make_window(plateau), grid);
      },
      py::arg("plateau") = 0.5, py::arg("dim") = 1,
      py::arg("half_width") = 32.0, py::arg("samples") = 4096);

  m.def(
      "modulation_norm",
      [](const std::string& function_id, const std::string& weight, double p,
         double q, long k_max, double tail_tol, int dim, double half_width,
         int samples) {
        const Grid grid = Grid::make(dim, half_width, samples);
        const SampledFunction f =
            make_function(FunctionSpec::parse(function_id), grid);
        NormParams params{weight_from(weight)};
        params.p = p;
        params.q = q;
        params.k_max = k_max;
        params.tail_tol = tail_tol;
        const NormResult res = modulation_norm(f, params);
        py::dict out;
        out["value"] = res.value;
        out["tail_estimate"] = res.tail_estimate;
        out["certified"] = res.certified;
        out["k_max"] = res.k_max;
        return out;
      },
      py::arg("function_id"), py::arg("weight") = "gevrey:s=2",
      py::arg("p") = 2.0, py::arg("q") = 1.0, py::arg("k_max") = 48,
      py::arg("tail_tol") = 1e-8, py::arg("dim") = 1,
      py::arg("half_width") = 32.0, py::arg("samples") = 4096);
}
