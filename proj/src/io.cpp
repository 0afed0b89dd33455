#include "lfwave/io.hpp"

#include <cstdio>
#include <sstream>

#include "lfwave/errors.hpp"

namespace lfwave::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int small_int(const Json& j, const std::string& path) {
  const long long v = integer(j, path);
  if (v < -(1LL << 30) || v > (1LL << 30)) fail(path, "integer out of range");
  return static_cast<int>(v);
}

Side side_from(const Json& j, const std::string& path) {
  if (j == "time") return Side::Time;
  if (j == "frequency") return Side::Frequency;
  fail(path, "expected \"time\" or \"frequency\"");
}

std::string measure_string(const Measure& m) {
  std::ostringstream out;
  out << numerator(m) << "/" << denominator(m);
  return out.str();
}

Json ballset_balls(const BallSet& s, const GroupDescriptor& g) {
  Json balls = Json::array();
  for (const auto& b : s.balls()) balls.push_back(to_json(b, g));
  return balls;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Element& x) {
  Json out = Json::array();
  for (const auto& [pos, d] : x.terms()) out.push_back(Json::array({pos, d.a, d.b}));
  return out;
}

Json to_json(const GroupDescriptor& g) {
  Json out{{"kind", kind_name(g.kind())}, {"p", g.p()}};
  if (g.is_quadratic()) out["u"] = g.u();
  out["r0"] = g.r0();
  out["modulus"] = g.modulus();
  return out;
}

Json to_json(const Ball& b, const GroupDescriptor&) { return Json{{"center", to_json(b.center)}, {"scale", b.scale}}; }

Json to_json(const BallSet& s, const GroupDescriptor& g) {
  return Json{{"side", side_name(s.side())}, {"balls", ballset_balls(s, g)}};
}

Json to_json(const StepFunction& f) {
  Json cells = Json::array();
  for (const auto& [idx, v] : f.cells()) cells.push_back(Json::array({idx, v.real(), v.imag()}));
  return Json{{"group", to_json(f.group())}, {"side", side_name(f.side())}, {"m", f.m()}, {"r", f.r()},
              {"cells", std::move(cells)}};
}

Json to_json(const BasisIndex& idx) {
  return Json{{"n", idx.n}, {"s_digits", to_json(idx.s.representative())}, {"i", idx.i}};
}

Json measure_to_json(const Measure& m) { return measure_string(m); }

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const WaveletSetResult& res, const GroupDescriptor& g) {
  Json lambdas = Json::array();
  for (const auto& l : res.lambdas) lambdas.push_back(ballset_balls(l, g));
  return Json{{"omega", to_json(res.omega, g)},
              {"lambdas", std::move(lambdas)},
              {"lambda_measure", measure_to_json(res.lambda_measure)},
              {"truncation",
               {{"epsilon", measure_to_json(res.epsilon)},
                {"dropped_measure", measure_to_json(res.dropped_measure)},
                {"n_iters", res.iterations}}}};
}

Json to_json(const GramReport& rep, const GroupDescriptor& g) {
  Json gens = rep.window.generators;
  Json entries = Json::array();
  const std::size_t n = rep.indices.size();
  for (std::size_t a = 0; a < n; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(Json::array({rep.matrix[a * n + b].real(), rep.matrix[a * n + b].imag()}));
    entries.push_back(std::move(row));
  }
  Json indices = Json::array();
  for (const auto& idx : rep.indices) indices.push_back(to_json(idx));
  return Json{{"group", to_json(g)},
              {"window",
               {{"n_min", rep.window.n_min},
                {"n_max", rep.window.n_max},
                {"coset_depth", rep.window.coset_depth},
                {"generators", std::move(gens)}}},
              {"matrix_size", n},
              {"max_offdiag_abs", rep.max_offdiag_abs},
              {"max_diag_err", rep.max_diag_err},
              {"runtime_ms", rep.runtime_ms},
              {"indices", std::move(indices)},
              {"matrix", std::move(entries)}};
}

Json to_json(const ParsevalReport& rep) {
  return Json{{"window",
               {{"n_min", rep.window.n_min},
                {"n_max", rep.window.n_max},
                {"coset_depth", rep.window.coset_depth},
                {"generators", rep.window.generators}}},
              {"levels", rep.levels},
              {"captured_energy", rep.captured},
              {"total_norm_sq", rep.total_norm_sq},
              {"tail_estimate", rep.tail_estimate}};
}

Json to_json(const CompareReport& rep) {
  const GroupDescriptor g = example_group(rep.id, rep.params);
  Json samples = Json::array();
  for (const auto& s : rep.samples)
    samples.push_back(Json{{"s_digits", to_json(s.s.representative())},
                           {"x_digits", to_json(s.x)},
                           {"N", s.n},
                           {"generic", complex_to_json(s.generic)},
                           {"closed_form", complex_to_json(s.closed)},
                           {"abs_err", s.error()}});
  return Json{{"example", example_name(rep.id)},
              {"params", {{"p", rep.params.p}, {"r", rep.params.r}}},
              {"group", to_json(g)},
              {"truncation",
               {{"epsilon", measure_to_json(rep.wavelet_set.epsilon)},
                {"dropped_measure", measure_to_json(rep.wavelet_set.dropped_measure)},
                {"n_iters", rep.wavelet_set.iterations}}},
              {"max_abs_err", rep.max_error},
              {"samples", std::move(samples)}};
}

Element element_from_json(const Json& j, const GroupDescriptor& g, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [position, a, b] digits");
  std::vector<Element::Term> terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "/" + std::to_string(k);
    const Json& t = j[k];
    if (!t.is_array() || t.size() < 2 || t.size() > 3) fail(p, "expected [position, a] or [position, a, b]");
    const Digit d{small_int(t[1], p + "/1"), t.size() == 3 ? small_int(t[2], p + "/2") : 0};
    terms.emplace_back(small_int(t[0], p + "/0"), d);
  }
  try {
    Element x(std::move(terms));
    validate(g, x);
    return x;
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

GroupDescriptor group_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  const int p = small_int(field(j, "p", path), path + "/p");
  const int r0 = j.contains("r0") ? small_int(j["r0"], path + "/r0") : 1;
  try {
    if (kind == "qp") return GroupDescriptor::qp(p, r0);
    if (kind == "fpt") return GroupDescriptor::fp_laurent(p, r0);
    if (kind == "qpquad") return GroupDescriptor::qp_quad(p, small_int(field(j, "u", path), path + "/u"), r0);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  fail(path + "/kind", "expected \"qp\", \"fpt\" or \"qpquad\"");
}

StepFunction step_function_from_json(const Json& j, const Limits& limits, const std::string& path) {
  const GroupDescriptor g = group_from_json(field(j, "group", path), path + "/group");
  const Side side = side_from(field(j, "side", path), path + "/side");
  const int m = small_int(field(j, "m", path), path + "/m");
  const int r = small_int(field(j, "r", path), path + "/r");
  StepFunction f(g, side, m, r, limits);
  const Json& cells = field(j, "cells", path);
  if (!cells.is_array()) fail(path + "/cells", "expected an array");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string p = path + "/cells/" + std::to_string(k);
    const Json& c = cells[k];
    if (!c.is_array() || c.size() != 3) fail(p, "expected [index, re, im]");
    if (!c[0].is_number_integer() || (!c[0].is_number_unsigned() && c[0].get<long long>() < 0))
      fail(p + "/0", "expected a nonnegative integer cell index");
    const auto idx = c[0].get<std::uint64_t>();
    if (idx >= f.cell_count()) fail(p + "/0", "cell index outside the window");
    f.set(idx, {number(c[1], p + "/1"), number(c[2], p + "/2")});
  }
  return f;
}

Measure measure_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational as \"num/den\"");
  try {
    return Measure(j.get<std::string>());
  } catch (const std::exception&) {
    fail(path, "not a rational");
  }
}

std::string digits_string(const Element& x) {
  std::string out;
  for (const auto& [pos, d] : x.terms()) {
    if (!out.empty()) out += ',';
    out += std::to_string(pos) + ":" + std::to_string(d.a);
    if (d.b != 0) out += ":" + std::to_string(d.b);
  }
  return out;
}

Element element_from_string(const std::string& text, const GroupDescriptor& g) {
  std::vector<Element::Term> terms;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    int pos = 0, a = 0, b = 0;
    char tail = 0;
    const int got = std::sscanf(item.c_str(), "%d:%d:%d%c", &pos, &a, &b, &tail);
    if (got < 2 || got > 3) throw ConfigError("bad digit \"" + item + "\", expected pos:a or pos:a:b");
    terms.emplace_back(pos, Digit{a, got == 3 ? b : 0});
  }
  Element x(std::move(terms));
  validate(g, x);
  return x;
}

std::string gram_csv(const GramReport& rep) {
  std::string out = "row,col,n1,s1,i1,n2,s2,i2,re,im\n";
  const std::size_t n = rep.indices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& x = rep.indices[a];
      const auto& y = rep.indices[b];
      const Complex v = rep.matrix[a * n + b];
      out += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(x.n) + ",\"" +
             digits_string(x.s.representative()) + "\"," + std::to_string(x.i) + "," + std::to_string(y.n) + ",\"" +
             digits_string(y.s.representative()) + "\"," + std::to_string(y.i) + "," + format_double(v.real()) + "," +
             format_double(v.imag()) + "\n";
    }
  return out;
}

std::string parseval_csv(const ParsevalReport& rep) {
  std::string out = "level,n_lo,n_hi,captured_energy\n";
  for (std::size_t k = 0; k < rep.levels.size(); ++k) {
    const int d = rep.levels[k];
    out += std::to_string(d) + "," + std::to_string(std::max(rep.window.n_min, -d)) + "," +
           std::to_string(std::min(rep.window.n_max, d)) + "," + format_double(rep.captured[k]) + "\n";
  }
  return out;
}

std::string compare_csv(const CompareReport& rep) {
  std::string out = "sample,s,x,N,generic_re,generic_im,closed_re,closed_im,abs_err\n";
  for (std::size_t k = 0; k < rep.samples.size(); ++k) {
    const auto& s = rep.samples[k];
    out += std::to_string(k) + ",\"" + digits_string(s.s.representative()) + "\",\"" + digits_string(s.x) + "\"," +
           std::to_string(s.n) + "," + format_double(s.generic.real()) + "," + format_double(s.generic.imag()) + "," +
           format_double(s.closed.real()) + "," + format_double(s.closed.imag()) + "," + format_double(s.error()) +
           "\n";
  }
  return out;
}

}  // namespace lfwave::io
