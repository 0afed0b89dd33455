#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "lfwave/errors.hpp"
#include "lfwave/io.hpp"

using namespace lfwave;
using io::Json;

namespace {

enum Exit { kPass = 0, kTolerance = 1, kConfig = 2, kGuard = 3 };

struct GroupFlags {
  std::string kind = "qp";
  int p = 2;
  int u = 2;
  int r0 = 1;

  GroupDescriptor make() const {
    if (kind == "qp") return GroupDescriptor::qp(p, r0);
    if (kind == "fpt") return GroupDescriptor::fp_laurent(p, r0);
    if (kind == "qpquad") return GroupDescriptor::qp_quad(p, u, r0);
    throw ConfigError("unknown --kind " + kind);
  }
};

struct Common {
  std::string out = "json";
  std::uint64_t max_cells = Limits{}.max_cells;
  unsigned threads = 0;

  Limits limits() const { return Limits{max_cells}; }
};

// "k" or "2^-k" for 2^-k, otherwise a rational "num/den".
Measure parse_eps(const std::string& text) {
  std::string t = text;
  if (t.rfind("2^-", 0) == 0) t = t.substr(3);
  if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos) {
    const int k = std::stoi(t);
    if (k < 1 || k > 200) throw ConfigError("--eps exponent out of range");
    return Measure(1) / Measure(boost::multiprecision::cpp_int(1) << k);
  }
  try {
    const Measure m(text);
    if (m <= 0 || m >= 1) throw ConfigError("--eps must lie in (0, 1)");
    return m;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("--eps: expected k, 2^-k or num/den");
  }
}

ExampleId parse_example(const std::string& name) {
  if (const auto id = example_from_name(name)) return *id;
  throw ConfigError("unknown example " + name);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void emit(const std::string& text) {
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << '\n';
}

void emit(const Json& j) { emit(j.dump(2)); }

Json config_json(const GroupDescriptor& g) {
  return Json{{"group", io::to_json(g)}, {"d_convention", "standard-digits"}};
}

std::string cells_csv(const std::vector<std::pair<std::string, const StepFunction*>>& fs) {
  std::string out = "function,cell,digits,re,im\n";
  for (const auto& [name, f] : fs) {
    const CellCodec codec = f->codec();
    for (const auto& [idx, v] : f->cells())
      out += name + "," + std::to_string(idx) + ",\"" + io::digits_string(codec.element_of(idx)) + "\"," +
             io::format_double(v.real()) + "," + io::format_double(v.imag()) + "\n";
  }
  return out;
}

// The wavelet-set generator restricted to the window (m, 1); exact on every
// cell it keeps.
StepFunction restricted_generator(const SpectralWavelet& sw, int m, const Limits& limits) {
  StepFunction f(sw.group(), Side::Time, m, 1, limits);
  const CellCodec codec = f.codec();
  const CosetIndex zero(sw.group(), Element{});
  for (std::uint64_t k = 0; k < f.cell_count(); ++k) {
    const Complex v = sw.eval(zero, codec.element_of(k));
    if (std::abs(v) > 1e-15) f.set(k, v);
  }
  return f;
}

struct BuildFlags {
  std::string system = "haar";
  std::string example = "qpwave";
  // 0 picks the example's own prime.
  int ex_p = 0;
  int ex_r = 1;
  std::string eps = "40";
  int iters = 64;
  int gen_m = 2;

  ExampleParams params(ExampleId id) const {
    if (ex_p != 0) return {ex_p, ex_r};
    const bool three = id == ExampleId::QpExtnWave || id == ExampleId::QpWave3;
    return {three ? 3 : 2, ex_r};
  }
};

int cmd_build(const GroupFlags& gf, const BuildFlags& bf, const Common& c) {
  if (bf.system == "haar") {
    const GroupDescriptor g = gf.make();
    const WaveletSystem sys = haar_shannon_system(g, c.limits());
    Json sigmas = Json::array();
    for (const auto& s : sys.sigmas) sigmas.push_back(io::to_json(s));
    Json gens = Json::array();
    for (const auto& f : sys.generators) gens.push_back(io::to_json(f));
    Json out = config_json(g);
    out["system"] = "haar";
    out["sigmas"] = std::move(sigmas);
    out["omega"] = io::to_json(sys.omega, g);
    out["generators"] = std::move(gens);
    out["truncation"] = {{"epsilon", "0"}, {"dropped_measure", "0"}, {"n_iters", 0}};
    if (c.out == "csv") {
      std::vector<std::pair<std::string, const StepFunction*>> fs;
      for (std::size_t i = 0; i < sys.generators.size(); ++i)
        fs.emplace_back("psi" + std::to_string(i + 1), &sys.generators[i]);
      emit(cells_csv(fs));
    } else {
      emit(out);
    }
    return kPass;
  }
  if (bf.system != "example") throw ConfigError("--system must be haar or example");
  const ExampleId id = parse_example(bf.example);
  const ExampleParams params = bf.params(id);
  const GroupDescriptor g = example_group(id, params);
  WaveletSetSpec spec = example_spec(id, params);
  spec.epsilon = parse_eps(bf.eps);
  spec.max_iterations = bf.iters;
  const WaveletSetResult res = build_wavelet_set(g, spec);
  const SpectralWavelet sw(g, res.omega);
  const StepFunction psi = restricted_generator(sw, bf.gen_m, c.limits());
  if (c.out == "csv") {
    emit(cells_csv({{"psi", &psi}}));
    return kPass;
  }
  Json sigmas = Json::array();
  for (const auto& part : spec.partition) sigmas.push_back(io::to_json(part.sigma));
  Json out = config_json(g);
  out["system"] = "example";
  out["example"] = example_name(id);
  out["params"] = {{"p", params.p}, {"r", params.r}};
  out["sigmas"] = std::move(sigmas);
  const Json set = io::to_json(res, g);
  out["omega"] = set["omega"];
  out["lambdas"] = set["lambdas"];
  out["lambda_measure"] = set["lambda_measure"];
  out["generators"] = Json::array({io::to_json(psi)});
  out["generator_restriction"] = {{"m", bf.gen_m}, {"r", 1}, {"norm_sq", psi.norm_sq()}};
  Json trunc = set["truncation"];
  trunc["l2_error_bound"] = std::sqrt(static_cast<double>(res.dropped_measure));
  out["truncation"] = std::move(trunc);
  emit(out);
  return kPass;
}

struct WindowFlags {
  int n_min = -2;
  int n_max = 2;
  int depth = 1;
  std::vector<int> generators;
};

GramWindow window_of(const WindowFlags& wf, std::size_t generator_count) {
  GramWindow w{wf.n_min, wf.n_max, wf.depth, wf.generators};
  if (w.generators.empty())
    for (std::size_t i = 1; i <= generator_count; ++i) w.generators.push_back(static_cast<int>(i));
  return w;
}

struct GramFlags {
  double corrupt = 1.0;
  double tol = 1e-8;
  bool no_timing = false;
};

int cmd_gram(const GroupFlags& gf, const BuildFlags& bf, const WindowFlags& wf, const GramFlags& flags,
             const Common& c) {
  GramReport rep;
  GroupDescriptor g = gf.make();
  Json extra;
  if (bf.system == "haar") {
    WaveletSystem sys = haar_shannon_system(g, c.limits());
    if (flags.corrupt != 1.0) sys.generators.front() = sys.generators.front().scaled(flags.corrupt);
    rep = gram_time(sys.generators, window_of(wf, sys.generators.size()), c.threads, c.limits());
  } else if (bf.system == "example") {
    if (flags.corrupt != 1.0) throw ConfigError("--corrupt applies to the haar system only");
    const ExampleId id = parse_example(bf.example);
    const ExampleParams params = bf.params(id);
    g = example_group(id, params);
    WaveletSetSpec spec = example_spec(id, params);
    spec.epsilon = parse_eps(bf.eps);
    spec.max_iterations = bf.iters;
    const WaveletSetResult res = build_wavelet_set(g, spec);
    rep = gram_spectral(SpectralWavelet(g, res.omega), window_of(wf, 1), c.threads);
    extra = {{"example", example_name(id)},
             {"params", {{"p", params.p}, {"r", params.r}}},
             {"truncation", io::to_json(res, g)["truncation"]}};
  } else {
    throw ConfigError("--system must be haar or example");
  }
  if (flags.no_timing) rep.runtime_ms = 0.0;
  const bool pass = rep.deviation() <= flags.tol;
  if (c.out == "csv") {
    emit(io::gram_csv(rep));
  } else {
    Json out = io::to_json(rep, g);
    out["d_convention"] = "standard-digits";
    out["system"] = bf.system;
    if (flags.corrupt != 1.0) out["corrupt_scale"] = flags.corrupt;
    for (const auto& [k, v] : extra.items()) out[k] = v;
    out["tolerance"] = flags.tol;
    out["pass"] = pass;
    emit(out);
  }
  std::cerr << "gram: deviation " << io::format_double(rep.deviation()) << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? kPass : kTolerance;
}

struct ParsevalFlags {
  std::string f = "H";
  std::string center;
  int scale = 0;
  std::uint64_t seed = 1;
  double threshold = 0.0;
};

StepFunction parseval_target(const GroupDescriptor& g, const ParsevalFlags& pf, const Limits& limits,
                             std::string& id) {
  if (pf.f == "H") {
    id = "indicator:H";
    return indicator(g, make_ball(g, Side::Time, Element{}, 0), limits);
  }
  if (pf.f == "ball") {
    const Element c = io::element_from_string(pf.center, g);
    id = "indicator:" + io::digits_string(c) + "@" + std::to_string(pf.scale);
    return indicator(g, make_ball(g, Side::Time, c, pf.scale), limits);
  }
  if (pf.f == "random") {
    // Unit-norm random function on the window (1, 1).
    id = "random:" + std::to_string(pf.seed);
    std::mt19937_64 rng(pf.seed);
    std::normal_distribution<double> n(0.0, 1.0);
    StepFunction f(g, Side::Time, 1, 1, limits);
    for (std::uint64_t k = 0; k < f.cell_count(); ++k) f.set(k, {n(rng), n(rng)});
    return f.scaled(1.0 / std::sqrt(f.norm_sq()));
  }
  id = "file:" + pf.f;
  StepFunction f = io::step_function_from_json(read_json(pf.f), limits);
  if (!(f.group() == g)) throw ConfigError("function group differs from the --kind/--p/--r0 group");
  return f;
}

int cmd_parseval(const GroupFlags& gf, const WindowFlags& wf, const ParsevalFlags& pf, const Common& c) {
  const GroupDescriptor g = gf.make();
  const WaveletSystem sys = haar_shannon_system(g, c.limits());
  std::string id;
  const StepFunction f = parseval_target(g, pf, c.limits(), id);
  const ParsevalReport rep = parseval(f, sys.generators, window_of(wf, sys.generators.size()), c.threads, c.limits());
  bool monotone = true;
  for (std::size_t k = 1; k < rep.captured.size(); ++k) monotone = monotone && rep.captured[k] >= rep.captured[k - 1];
  const bool bounded = rep.captured.back() <= rep.total_norm_sq + 1e-9;
  const bool enough = rep.captured.back() >= pf.threshold * rep.total_norm_sq;
  const bool pass = monotone && bounded && enough;
  if (c.out == "csv") {
    emit(io::parseval_csv(rep));
  } else {
    Json out = config_json(g);
    out["system"] = "haar";
    out["target"] = id;
    const Json body = io::to_json(rep);
    for (const auto& [k, v] : body.items()) out[k] = v;
    out["threshold"] = pf.threshold;
    out["pass"] = pass;
    emit(out);
  }
  std::cerr << "parseval: captured " << io::format_double(rep.captured.back()) << " of "
            << io::format_double(rep.total_norm_sq) << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? kPass : kTolerance;
}

struct CompareFlags {
  int samples = 64;
  int max_n = 4;
  std::uint64_t seed = 1;
  double tol = 1e-6;
};

int cmd_compare(const BuildFlags& bf, const CompareFlags& cf, const Common& c) {
  const ExampleId id = parse_example(bf.example);
  const CompareReport rep =
      compare_example(id, bf.params(id), cf.samples, cf.seed, cf.max_n, parse_eps(bf.eps));
  const bool pass = rep.max_error <= cf.tol;
  if (c.out == "csv") {
    emit(io::compare_csv(rep));
  } else {
    Json out = io::to_json(rep);
    out["d_convention"] = "standard-digits";
    out["seed"] = cf.seed;
    out["max_n"] = cf.max_n;
    out["tolerance"] = cf.tol;
    out["pass"] = pass;
    emit(out);
  }
  std::cerr << "compare: max error " << io::format_double(rep.max_error) << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? kPass : kTolerance;
}

int cmd_eval(const std::string& path, const std::string& x, const Common& c) {
  const StepFunction f = io::step_function_from_json(read_json(path), c.limits());
  const Element at = io::element_from_string(x, f.group());
  const Complex v = f.eval(at);
  if (c.out == "csv")
    emit("re,im\n" + io::format_double(v.real()) + "," + io::format_double(v.imag()) + "\n");
  else
    emit(Json{{"x_digits", io::to_json(at)}, {"value", io::complex_to_json(v)}});
  return kPass;
}

int cmd_transform(const std::string& path, bool cellwise, const Common& c) {
  const StepFunction f = io::step_function_from_json(read_json(path), c.limits());
  const TransformPath tp = cellwise ? TransformPath::Cellwise : TransformPath::Quotient;
  const StepFunction out =
      f.side() == Side::Time ? transform(f, tp, c.limits()) : inverse_transform(f, tp, c.limits());
  if (c.out == "csv")
    emit(cells_csv({{"F", &out}}));
  else
    emit(io::to_json(out));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelets on local fields: constructions and verification suites"};
  app.require_subcommand(1);
  Common common;
  GroupFlags gf;
  BuildFlags bf;
  WindowFlags wf;
  GramFlags gram_flags;
  ParsevalFlags pf;
  CompareFlags cf;
  std::string f_path, x_text;
  bool cellwise = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--max-cells", common.max_cells, "cell guard per step function");
    sub->add_option("--threads", common.threads, "worker threads, 0 for all cores");
  };
  const auto add_group = [&](CLI::App* sub) {
    sub->add_option("--kind", gf.kind, "qp, fpt or qpquad")->check(CLI::IsMember({"qp", "fpt", "qpquad"}));
    sub->add_option("--p", gf.p, "residue characteristic");
    sub->add_option("--u", gf.u, "nonresidue for qpquad");
    sub->add_option("--r0", gf.r0, "dilation exponent");
  };
  const auto add_system = [&](CLI::App* sub, bool with_system) {
    if (with_system)
      sub->add_option("--system", bf.system, "haar or example")->check(CLI::IsMember({"haar", "example"}));
    sub->add_option("--example", bf.example, "qpwave, qpextnwave, fptwave, fptwave-printed, qpwave3");
    sub->add_option("--ex-p", bf.ex_p, "example prime, default 3 for qpextnwave and qpwave3, else 2");
    sub->add_option("--ex-r", bf.ex_r, "example exponent r");
    sub->add_option("--eps", bf.eps, "truncation: k, 2^-k or num/den");
    sub->add_option("--iters", bf.iters, "iteration cap");
  };
  const auto add_window = [&](CLI::App* sub) {
    sub->add_option("--nmin", wf.n_min, "lowest dilation");
    sub->add_option("--nmax", wf.n_max, "highest dilation");
    sub->add_option("--depth", wf.depth, "coset depth");
    sub->add_option("--generators", wf.generators, "generator numbers, default all");
  };

  CLI::App* build = app.add_subcommand("build", "emit a wavelet system as JSON");
  add_common(build);
  add_group(build);
  add_system(build, true);
  build->add_option("--gen-m", bf.gen_m, "support window of the emitted wavelet-set generator");

  CLI::App* gram = app.add_subcommand("gram", "Gram matrix over a window of basis indices");
  add_common(gram);
  add_group(gram);
  add_system(gram, true);
  add_window(gram);
  gram->add_option("--corrupt", gram_flags.corrupt, "scale the first generator (negative control)");
  gram->add_option("--tol", gram_flags.tol, "allowed deviation from the identity");
  gram->add_flag("--no-timing", gram_flags.no_timing, "report runtime_ms as 0");

  CLI::App* pars = app.add_subcommand("parseval", "captured energy of f over the Haar system");
  add_common(pars);
  add_group(pars);
  add_window(pars);
  pars->add_option("--f", pf.f, "H, ball, random or a step-function JSON path");
  pars->add_option("--center", pf.center, "ball center digits pos:a[:b],...");
  pars->add_option("--scale", pf.scale, "ball scale");
  pars->add_option("--seed", pf.seed, "seed for --f random");
  pars->add_option("--threshold", pf.threshold, "required fraction of the norm");

  CLI::App* comp = app.add_subcommand("compare", "generic evaluation against an example's closed form");
  add_common(comp);
  add_system(comp, false);
  comp->add_option("--samples", cf.samples, "sample points");
  comp->add_option("--max-n", cf.max_n, "largest N");
  comp->add_option("--seed", cf.seed, "sampling seed");
  comp->add_option("--tol", cf.tol, "allowed max error");

  CLI::App* ev = app.add_subcommand("eval", "evaluate a step function at a point");
  add_common(ev);
  ev->add_option("f", f_path, "step-function JSON")->required();
  ev->add_option("--x", x_text, "point digits pos:a[:b],...")->required();

  CLI::App* tr = app.add_subcommand("transform", "Fourier transform (time side) or inverse (frequency side)");
  add_common(tr);
  tr->add_option("f", f_path, "step-function JSON")->required();
  tr->add_flag("--cellwise", cellwise, "use the cell-by-cell reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*build) return cmd_build(gf, bf, common);
    if (*gram) return cmd_gram(gf, bf, wf, gram_flags, common);
    if (*pars) return cmd_parseval(gf, wf, pf, common);
    if (*comp) return cmd_compare(bf, cf, common);
    if (*ev) return cmd_eval(f_path, x_text, common);
    if (*tr) return cmd_transform(f_path, cellwise, common);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
