#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/io.hpp"
#include "tpcsp/moments.hpp"
#include "tpcsp/selfcheck.hpp"
#include "tpcsp/solver.hpp"
#include "tpcsp/transforms.hpp"

namespace py = pybind11;
using namespace tpcsp;

namespace {

py::dict report_to_dict(const DeviationReport& report, const VarTable& vars) {
  py::dict out;
  out["satisfied"] = report.satisfied;
  out["average"] = report.average.str();
  out["deviation"] = report.deviation.str();
  if (report.witness) {
    py::list names;
    for (VarId v : report.witness->positions) names.append(vars.name(v));
    out["witness"] = names;
  }
  return out;
}

LoInstance lo_from_text(const std::string& text) {
  ParsedFile file = parse_instance_text(text);
  if (!file.is_lo()) throw Error(Errc::invalid_argument, "expected a triple instance");
  return file.lo();
}

MixedInstance mixed_from_text(const std::string& text) {
  ParsedFile file = parse_instance_text(text);
  if (file.is_lo()) throw Error(Errc::invalid_argument, "expected an arc/btw instance");
  return file.mixed();
}

}  // namespace

PYBIND11_MODULE(_tpcsp, m) {
  m.doc() = "exact solvers, kernels and generators for ternary permutation CSPs above average";

  py::register_exception<Error>(m, "TpcspError");

  py::class_<PiSet>(m, "PiSet")
      .def(py::init<unsigned>())
      .def_readonly("mask", &PiSet::mask)
      .def("size", &PiSet::size)
      .def("words", &PiSet::words_str)
      .def("__repr__", [](const PiSet& p) { return "PiSet(" + p.words_str() + ")"; });

  py::class_<LoInstance>(m, "LoInstance")
      .def_static("from_text", &lo_from_text)
      .def("to_text", [](const LoInstance& inst) { return serialize(inst); })
      .def_property_readonly("n", &LoInstance::n)
      .def_property_readonly("m", &LoInstance::total_mult)
      .def_readonly("pi", &LoInstance::pi)
      .def_readwrite("k", &LoInstance::k)
      .def("__repr__", [](const LoInstance& inst) {
        return "LoInstance(n=" + std::to_string(inst.n()) +
               ", m=" + std::to_string(inst.total_mult()) + ", pi=" + inst.pi.words_str() +
               ", k=" + std::to_string(inst.k) + ")";
      });

  py::class_<MixedInstance>(m, "MixedInstance")
      .def_static("from_text", &mixed_from_text)
      .def("to_text", [](const MixedInstance& mixed) { return serialize(mixed, 0); })
      .def_property_readonly("n", &MixedInstance::n)
      .def_property_readonly("r", &MixedInstance::r)
      .def_property_readonly("s", &MixedInstance::s)
      .def("__repr__", [](const MixedInstance& mx) {
        return "MixedInstance(n=" + std::to_string(mx.n()) + ", r=" + std::to_string(mx.r()) +
               ", s=" + std::to_string(mx.s()) + ")";
      });

  m.def("canonical_pi_class", [](const PiSet& pi) { return canonical_pi_class(pi); });
  m.def("pi_class_representative", &pi_class_representative);
  m.def("pi_class_name", &pi_class_name);

  m.def(
      "max_dev_bruteforce",
      [](const LoInstance& inst) {
        return report_to_dict(max_dev_bruteforce(inst), inst.vars);
      },
      py::arg("inst"));
  m.def(
      "max_dev_dp",
      [](const LoInstance& inst) { return report_to_dict(max_dev_dp(inst), inst.vars); },
      py::arg("inst"));
  m.def("decide_above_average",
        [](const LoInstance& inst) { return decide_above_average(inst); });

  m.def("to_linear_ordering", &to_linear_ordering);
  m.def("decompose_lo", &decompose_lo);
  m.def("reduce_mixed", [](const MixedInstance& mixed) {
    long long b = 0, t = 0;
    MixedInstance reduced = reduce_mixed(mixed, &b, &t);
    return py::make_tuple(reduced, b, t);
  });
  m.def(
      "kernelize",
      [](const LoInstance& inst, std::optional<std::string> c_constant) {
        KernelConfig cfg;
        if (c_constant) {
          size_t slash = c_constant->find('/');
          cfg.c_constant = slash == std::string::npos
                               ? Rational(std::stoll(*c_constant))
                               : Rational(std::stoll(c_constant->substr(0, slash)),
                                          std::stoll(c_constant->substr(slash + 1)));
          cfg.allow_override = true;
        }
        KernelResult result = kernelize_lo(inst, cfg);
        py::dict out;
        out["verdict"] = result.verdict == KernelResult::Verdict::YES ? "YES" : "KERNEL";
        out["b"] = result.stats.b;
        out["t"] = result.stats.t;
        out["r"] = result.stats.r;
        out["s"] = result.stats.s;
        if (result.kernel) out["kernel"] = *result.kernel;
        return out;
      },
      py::arg("inst"), py::arg("c_constant") = std::nullopt);

  m.def(
      "bikernel",
      [](const LoInstance& inst, int j) {
        TransformResult tr = bikernel(inst, j);
        py::dict out;
        out["notes"] = tr.notes;
        if (tr.kind == TransformResult::Kind::TriviallyNo) {
          out["verdict"] = "TRIVIALLY_NO";
        } else {
          out["k_out"] = tr.k_out;
          out["instance"] = *tr.lo;
        }
        return out;
      },
      py::arg("inst"), py::arg("j"));

  m.def("x_value", [](int lu, int lv) { return x_value(lu, lv).str(); });
  m.def("y_value", [](int lu, int lv, int lw) { return y_value(lu, lv, lw).str(); });
  m.def("z_value", [](int lu, int lv, int lw) { return z_value(lu, lv, lw).str(); });
  m.def("second_moment",
        [](const MixedInstance& mixed) { return second_moment(mixed).str(); });
  m.def("second_moment_lo", [](const LoInstance& inst) { return second_moment(inst).str(); });
  m.def("cross_moment_xy",
        [](const MixedInstance& mixed) { return cross_moment_xy(mixed).str(); });
  m.def("check_lower_bound", &check_lower_bound);
  m.def("fourth_moment_check", [](const LoInstance& inst) {
    auto [e4, bound] = fourth_moment_check(inst);
    return py::make_tuple(e4.str(), bound.str());
  });

  m.def(
      "generate_hard_instance",
      [](int level, long long k) { return cycles_to_lo_instance(generate_g(level), k); },
      py::arg("level"), py::arg("k") = 0);
  m.def(
      "gen_random",
      [](int n, long long m, unsigned pi_mask, uint64_t seed) {
        RandSpec spec;
        spec.n = n;
        spec.m = m;
        spec.pi = PiSet(pi_mask);
        spec.seed = seed;
        return gen_random(spec);
      },
      py::arg("n"), py::arg("m"), py::arg("pi_mask") = 1u, py::arg("seed") = 0u);

  m.def("selfcheck", [](bool full) {
    selfcheck::Options options;
    options.sizes = full ? selfcheck::full_sizes() : selfcheck::reduced_sizes();
    py::list out;
    for (const auto& r : selfcheck::run_selfcheck(options)) {
      py::dict item;
      item["criterion"] = r.criterion;
      item["name"] = r.name;
      item["pass"] = r.pass;
      item["detail"] = r.detail;
      out.append(item);
    }
    return out;
  }, py::arg("full") = false);
}
