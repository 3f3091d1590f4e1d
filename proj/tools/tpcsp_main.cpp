// tpcsp: exact solvers, reductions and generators for ternary permutation
// constraint problems parameterized above the random-ordering average.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/io.hpp"
#include "tpcsp/moments.hpp"
#include "tpcsp/selfcheck.hpp"
#include "tpcsp/solver.hpp"
#include "tpcsp/transforms.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tpcsp;

constexpr int kSchemaVersion = 1;

struct Output {
  bool json = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(ordered_json& report) const {
    if (json) {
      std::cout << report.dump(2) << "\n";
      return;
    }
    print_human(report, "");
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::cout << "wall_time_ms: " << elapsed << "\n";
  }

private:
  static void print_human(const ordered_json& node, const std::string& prefix) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        print_human(value, prefix + key + ".");
      } else if (value.is_array() && !value.empty() && value.front().is_string()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ' ';
          joined += item.get<std::string>();
        }
        std::cout << prefix << key << ": " << joined << "\n";
      } else {
        std::cout << prefix << key << ": " << value.dump() << "\n";
      }
    }
  }
};

ordered_json report_shell(const std::string& command) {
  ordered_json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  return report;
}

ordered_json lo_stats(const LoInstance& inst) {
  ordered_json stats;
  stats["n"] = inst.n();
  stats["m"] = inst.total_mult();
  stats["pi"] = inst.pi.words_str();
  stats["pi_class"] = canonical_pi_class(inst.pi);
  stats["k"] = inst.k;
  return stats;
}

ordered_json mixed_stats(const MixedInstance& mixed, long long k) {
  ordered_json stats;
  stats["n"] = mixed.n();
  stats["r"] = mixed.r();
  stats["s"] = mixed.s();
  stats["k"] = k;
  return stats;
}

ordered_json instance_stats(const ParsedFile& file) {
  return file.is_lo() ? lo_stats(file.lo()) : mixed_stats(file.mixed(), file.k);
}

std::vector<std::string> witness_names(const VarTable& vars, const LinearOrdering& alpha) {
  std::vector<std::string> names;
  names.reserve(alpha.positions.size());
  for (VarId v : alpha.positions) names.push_back(vars.name(v));
  return names;
}

Rational parse_rational_flag(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(text));
  return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

void write_or_embed(ordered_json& report, const std::string& out_path, const std::string& text,
                    const char* field) {
  if (out_path.empty()) report[field] = text;
  else {
    write_file(out_path, text);
    report["output_file"] = out_path;
  }
}

// kernelize/decompose accept any nontrivial Pi and normalize first
LoInstance normalized_input(const LoInstance& inst, ordered_json& report) {
  if (inst.pi == PiSet(1u)) return inst;
  report["normalized_from_pi"] = inst.pi.words_str();
  return to_linear_ordering(inst);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact toolkit for ternary permutation constraint problems above average"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string in_path, out_path, pi_words = "123", c_constant;
  bool json = false, full_check = false;
  int to_class = 0, level = 0, n = 5;
  long long m = 5, k_flag = 0;
  uint64_t seed = 0;
  SolverLimits limits;

  app.add_flag("--json", json, "machine-readable report on stdout");
  app.add_option("--max-brute-n", limits.max_brute_n, "brute-force variable limit");
  app.add_option("--max-dp-n", limits.max_dp_n, "subset-DP variable limit");
  app.add_option("--threads", limits.threads, "worker threads for enumeration");

  auto* solve = app.add_subcommand("solve", "exact maximum deviation and a witness ordering");
  solve->add_option("-i,--input", in_path, "instance file")->required();

  auto* decide = app.add_subcommand("decide", "is the maximum deviation at least k?");
  decide->add_option("-i,--input", in_path, "instance file")->required();

  auto* kernelize = app.add_subcommand("kernelize", "size-bounded equivalent instance");
  kernelize->add_option("-i,--input", in_path, "instance file")->required();
  kernelize->add_option("-o,--output", out_path, "kernel file");
  kernelize->add_option("--c-constant", c_constant, "override the size threshold constant");

  auto* transform = app.add_subcommand("transform", "reduce into another problem class");
  transform->add_option("-i,--input", in_path, "instance file")->required();
  transform->add_option("-o,--output", out_path, "target instance file");
  transform->add_option("--to", to_class, "target class in [0,10]")->required();

  auto* decompose = app.add_subcommand("decompose", "split triples into arcs and betweenness");
  decompose->add_option("-i,--input", in_path, "instance file")->required();
  decompose->add_option("-o,--output", out_path, "mixed instance file");

  auto* reduce = app.add_subcommand("reduce", "delete opposite arc pairs and complete 3-sets");
  reduce->add_option("-i,--input", in_path, "mixed instance file")->required();
  reduce->add_option("-o,--output", out_path, "reduced instance file");

  auto* moments = app.add_subcommand("moments", "exact second/fourth moments and bounds");
  moments->add_option("-i,--input", in_path, "instance file")->required();

  auto* gen_hard = app.add_subcommand("gen-hard", "zero-deviation hard-family instance");
  gen_hard->add_option("--level", level, "recursion level")->required();
  gen_hard->add_option("--k", k_flag, "parameter for the emitted instance");
  gen_hard->add_option("-o,--output", out_path, "instance file");

  auto* gen_rand = app.add_subcommand("gen-rand", "seeded random instance");
  gen_rand->add_option("--n", n, "number of variables")->required();
  gen_rand->add_option("--m", m, "number of constraints")->required();
  gen_rand->add_option("--pi", pi_words, "permutation words, e.g. 123,321");
  gen_rand->add_option("--seed", seed, "RNG seed");
  gen_rand->add_option("--k", k_flag, "parameter for the emitted instance");
  gen_rand->add_option("-o,--output", out_path, "instance file");

  auto* classify = app.add_subcommand("classify", "symmetry class of a Pi set");
  classify->add_option("-i,--input", in_path, "instance file");
  classify->add_option("--pi", pi_words, "permutation words, e.g. 123,321");

  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "run the verification suite");
  selfcheck_cmd->add_flag("--full", full_check, "full acceptance sizes instead of reduced");

  CLI11_PARSE(app, argc, argv);
  Output out;
  out.json = json;

  if (solve->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    ordered_json report = report_shell("solve");
    report["instance"] = instance_stats(file);
    ordered_json result;
    if (file.is_lo()) {
      const LoInstance& inst = file.lo();
      DeviationReport dev = inst.n() <= limits.max_dp_n ? max_dev_dp(inst, limits)
                                                        : max_dev_bruteforce(inst, limits);
      result["satisfied"] = dev.satisfied;
      result["average"] = dev.average.str();
      result["deviation"] = dev.deviation.str();
      result["witness"] = witness_names(inst.vars, *dev.witness);
    } else {
      DeviationReport dev = max_dev_mixed(file.mixed(), limits);
      result["satisfied"] = dev.satisfied;
      result["average"] = dev.average.str();
      result["deviation"] = dev.deviation.str();
      result["witness"] = witness_names(file.mixed().vars, *dev.witness);
    }
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (decide->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    ordered_json report = report_shell("decide");
    report["instance"] = instance_stats(file);
    ordered_json result;
    Rational dev =
        file.is_lo()
            ? (file.lo().n() <= limits.max_dp_n ? max_dev_dp(file.lo(), limits)
                                                : max_dev_bruteforce(file.lo(), limits))
                  .deviation
            : max_dev_mixed(file.mixed(), limits).deviation;
    bool yes = dev >= Rational(file.k);
    result["k"] = file.k;
    result["deviation"] = dev.str();
    result["verdict"] = yes ? "YES" : "NO";
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (kernelize->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    if (!file.is_lo()) fail(Errc::invalid_argument, "kernelize expects a triple instance");
    ordered_json report = report_shell("kernelize");
    report["instance"] = instance_stats(file);
    ordered_json result;
    const LoInstance& raw = file.lo();
    if (raw.pi.empty() || raw.pi.full()) {
      // nothing above the average is ever possible; decide directly
      result["verdict"] = raw.k == 0 ? "YES" : "NO";
      result["note"] = "trivial Pi set, deviation is always 0/1";
    } else {
      LoInstance inst = normalized_input(raw, result);
      KernelConfig cfg;
      if (!c_constant.empty()) {
        cfg.c_constant = parse_rational_flag(c_constant);
        cfg.allow_override = true;
      }
      KernelResult kernel = kernelize_lo(inst, cfg);
      result["c_constant"] = cfg.c_constant.str();
      result["stats"] = {{"b", kernel.stats.b},
                         {"t", kernel.stats.t},
                         {"r", kernel.stats.r},
                         {"s", kernel.stats.s}};
      if (kernel.verdict == KernelResult::Verdict::YES) {
        result["verdict"] = "YES";
      } else {
        result["verdict"] = "KERNEL";
        result["kernel_n"] = kernel.kernel->n();
        result["kernel_m"] = kernel.kernel->total_mult();
        write_or_embed(result, out_path, serialize(*kernel.kernel), "kernel");
      }
    }
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (transform->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    ordered_json report = report_shell("transform");
    report["instance"] = instance_stats(file);
    ordered_json result;
    result["to"] = to_class;
    TransformResult tr;
    if (file.is_lo()) {
      tr = bikernel(file.lo(), to_class);
    } else {
      long long b = 0, t = 0;
      MixedInstance reduced = reduce_mixed(file.mixed(), &b, &t);
      tr = transform_reduced_mixed(reduced, file.k, to_class);
      tr.notes["b"] = b;
      tr.notes["t"] = t;
    }
    ordered_json notes;
    for (const auto& [key, value] : tr.notes) notes[key] = value;
    result["notes"] = notes;
    if (tr.kind == TransformResult::Kind::TriviallyNo) {
      result["verdict"] = "TRIVIALLY_NO";
    } else {
      result["k_out"] = tr.k_out;
      if (tr.kind == TransformResult::Kind::Lo) {
        result["target"] = lo_stats(*tr.lo);
        write_or_embed(result, out_path, serialize(*tr.lo), "content");
      } else {
        result["target"] = mixed_stats(*tr.mixed, tr.k_out);
        write_or_embed(result, out_path, serialize(*tr.mixed, tr.k_out), "content");
      }
    }
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (decompose->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    if (!file.is_lo()) fail(Errc::invalid_argument, "decompose expects a triple instance");
    ordered_json report = report_shell("decompose");
    report["instance"] = instance_stats(file);
    ordered_json result;
    LoInstance inst = normalized_input(file.lo(), result);
    MixedInstance mixed = decompose_lo(inst);
    result["r"] = mixed.r();
    result["s"] = mixed.s();
    write_or_embed(result, out_path, serialize(mixed, inst.k), "content");
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (reduce->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    if (file.is_lo()) fail(Errc::invalid_argument, "reduce expects an arc/btw instance");
    ordered_json report = report_shell("reduce");
    report["instance"] = instance_stats(file);
    ordered_json result;
    long long b = 0, t = 0;
    MixedInstance reduced = reduce_mixed(file.mixed(), &b, &t);
    result["b"] = b;
    result["t"] = t;
    result["r"] = reduced.r();
    result["s"] = reduced.s();
    write_or_embed(result, out_path, serialize(reduced, file.k), "content");
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (moments->parsed()) {
    ParsedFile file = parse_instance_file(in_path);
    ordered_json report = report_shell("moments");
    report["instance"] = instance_stats(file);
    ordered_json result;
    if (file.is_lo()) {
      LoInstance inst = normalized_input(file.lo(), result);
      Rational z2 = second_moment(inst);
      result["e_z2"] = z2.str();
      if (inst.n() <= 5) {
        result["e_z2_full"] = second_moment_full(inst).str();
        auto [e4, bound] = fourth_moment_check(inst);
        result["e_z4"] = e4.str();
        result["hyper_bound"] = bound.str();
        result["hyper_holds"] = e4 <= bound;
      }
    } else {
      const MixedInstance& mixed = file.mixed();
      Rational sum2 = second_moment(mixed);
      result["e_sum2"] = sum2.str();
      result["e_z2"] = (sum2 * Rational(1, 4)).str();
      result["cross_moment_xy"] = cross_moment_xy(mixed).str();
      long long b = 0, t = 0;
      reduce_mixed(mixed, &b, &t);
      bool reduced = b == 0 && t == 0;
      result["reduced"] = reduced;
      if (reduced) {
        result["lower_bound"] = Rational(11 * (mixed.r() + mixed.s()), 3072).str();
        result["lower_bound_holds"] = check_lower_bound(mixed);
      }
    }
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (gen_hard->parsed()) {
    ordered_json report = report_shell("gen-hard");
    HardFamily fam = generate_g(level);
    LoInstance inst = cycles_to_lo_instance(fam, k_flag);
    ordered_json result;
    result["level"] = level;
    result["vars"] = fam.vars.size();
    result["cycles"] = static_cast<long long>(fam.cycles.size());
    result["constraints"] = inst.total_mult();
    write_or_embed(result, out_path, serialize(inst), "content");
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (gen_rand->parsed()) {
    ordered_json report = report_shell("gen-rand");
    RandSpec spec;
    spec.n = n;
    spec.m = m;
    spec.seed = seed;
    {
      ParsedFile pi_probe = parse_instance_text("pi " + pi_words + "\n");
      spec.pi = pi_probe.lo().pi;
    }
    LoInstance inst = gen_random(spec);
    inst.k = k_flag;
    ordered_json result;
    result["n"] = spec.n;
    result["m"] = inst.total_mult();
    result["pi"] = inst.pi.words_str();
    result["seed"] = spec.seed;
    write_or_embed(result, out_path, serialize(inst), "content");
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (classify->parsed()) {
    ordered_json report = report_shell("classify");
    PiSet pi;
    if (!in_path.empty()) {
      ParsedFile file = parse_instance_file(in_path);
      if (!file.is_lo()) fail(Errc::invalid_argument, "mixed instances carry no Pi set");
      pi = file.lo().pi;
    } else {
      pi = parse_instance_text("pi " + pi_words + "\n").lo().pi;
    }
    int cls = canonical_pi_class(pi);
    ordered_json result;
    result["pi"] = pi.words_str();
    result["mask"] = pi.mask;
    result["class"] = cls;
    std::string name = pi_class_name(cls);
    if (!name.empty()) result["name"] = name;
    result["representative"] = pi_class_representative(cls).words_str();
    result["orbit_size"] = static_cast<long long>(pi_orbit(pi).size());
    report["result"] = result;
    out.emit(report);
    return 0;
  }

  if (selfcheck_cmd->parsed()) {
    selfcheck::Options options;
    options.sizes = full_check ? selfcheck::full_sizes() : selfcheck::reduced_sizes();
    std::vector<selfcheck::CheckResult> results = selfcheck::run_selfcheck(options);
    bool all_pass = true;
    if (json) {
      ordered_json report = report_shell("selfcheck");
      ordered_json list = ordered_json::array();
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        list.push_back({{"criterion", r.criterion},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail}});
      }
      report["result"] = {{"checks", list}, {"pass", all_pass}};
      std::cout << report.dump(2) << "\n";
    } else {
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.criterion << " " << r.name << " - "
                  << r.detail << "\n";
      }
      std::cout << (all_pass ? "selfcheck: all criteria passed" : "selfcheck: FAILURES above")
                << "\n";
    }
    return all_pass ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const tpcsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
