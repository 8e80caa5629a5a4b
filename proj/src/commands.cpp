#include "ffdist/commands.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "ffdist/charsum.hpp"
#include "ffdist/distance.hpp"
#include "ffdist/error.hpp"
#include "ffdist/geometry.hpp"

namespace ffdist {

namespace {

using Json = nlohmann::ordered_json;

struct Context {
  FieldPtr field;
  std::unique_ptr<Space> space;
  std::unique_ptr<CharacterTable> chars;
};

Context make_context(const CommandOptions& opt, bool need_space = true) {
  const auto& ex = opt.experiment;
  Context ctx;
  ctx.field = std::make_shared<const Field>(Field::make(ex.p, ex.s));
  if (need_space) ctx.space = std::make_unique<Space>(ctx.field, ex.d, ex.cap);
  ctx.chars = std::make_unique<CharacterTable>(ctx.field);
  return ctx;
}

Json record(const Field& f, unsigned d, std::optional<unsigned> k, std::optional<std::uint32_t> t,
            std::optional<std::uint64_t> size) {
  Json r;
  r["q"] = f.q();
  r["p"] = f.p();
  r["s"] = f.s();
  r["d"] = d;
  r["k"] = k ? Json(*k) : Json(nullptr);
  r["t"] = t ? Json(*t) : Json(nullptr);
  r["size"] = size ? Json(*size) : Json(nullptr);
  r["direct"] = nullptr;
  r["spectral"] = nullptr;
  r["equal"] = nullptr;
  r["components"] = Json::object();
  return r;
}

std::string point_string(std::span<const FieldElement> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x[i].index);
  }
  return out + ")";
}

Json element_list(const std::vector<FieldElement>& xs) {
  Json arr = Json::array();
  for (auto x : xs) arr.push_back(x.index);
  return arr;
}

void add_numeric(Json& comp, const std::string& key, const Cyclotomic& v) {
  const auto z = v.to_complex();
  comp[key + "_re"] = z.real();
  comp[key + "_im"] = z.imag();
}

std::string value_string(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += value_string(v[i]);
    }
    return out;
  }
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& obj, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else {
      out.emplace_back(name, value_string(value));
    }
  }
}

std::string render(const std::vector<Json>& records, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json arr = Json::array();
    for (const auto& r : records) arr.push_back(r);
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    std::string prefix;
    for (const char* key : {"q", "p", "s", "d", "k", "t", "size"}) {
      prefix += value_string(r[key]) + ",";
    }
    const Json& comp = r["components"];
    prefix += (comp.contains("trial") ? value_string(comp["trial"]) : std::string()) + ",";
    std::vector<std::pair<std::string, std::string>> metrics;
    for (const char* key : {"direct", "spectral", "equal"}) {
      if (!r[key].is_null()) metrics.emplace_back(key, value_string(r[key]));
    }
    Json rest = comp;
    rest.erase("trial");
    flatten(rest, "", metrics);
    for (const auto& [metric, value] : metrics) {
      os << prefix << csv_field(metric) << ',' << csv_field(value) << '\n';
    }
  }
  return os.str();
}

PointSet resolve_set(const CommandOptions& opt, const Space& space) {
  if (opt.points) {
    std::vector<Point> pts;
    for (const auto& tuple : *opt.points) {
      Point x;
      for (auto c : tuple) x.push_back(space.field().element(c));
      pts.push_back(std::move(x));
    }
    return PointSet::from_points(space, pts);
  }
  if (opt.experiment.sharpness) return sharpness_example(space, opt.experiment.k);
  if (opt.size) return sample_set(space, opt.experiment.seed, *opt.size, opt.trial);
  throw InvalidArgument("specify E with --points, --size or --sharpness");
}

FieldElement require_t(const CommandOptions& opt, const Field& f) {
  if (!opt.t) throw InvalidArgument("--t is required");
  return f.element(*opt.t);
}

std::vector<std::uint32_t> radii(const CommandOptions& opt, const Field& f, bool nonzero) {
  if (opt.t) {
    f.element(*opt.t);
    return {*opt.t};
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = nonzero ? 1 : 0; t < f.q(); ++t) out.push_back(t);
  return out;
}

int cmd_verify(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto field = std::make_shared<const Field>(Field::make(ex.p, ex.s));
  int code = 0;
  for (const auto& check : verify_identities(field, ex.d, ex.cap)) {
    Json r = record(*field, ex.d, std::nullopt, std::nullopt, std::nullopt);
    r["equal"] = check.passed;
    r["components"]["check"] = check.name;
    r["components"]["detail"] = check.detail;
    if (!check.passed) code = 1;
    out.push_back(std::move(r));
  }
  return code;
}

int cmd_sphere_ft(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto ctx = make_context(opt);
  const Space& space = *ctx.space;
  const Field& f = *ctx.field;
  const SphereSpec spec{ex.k, require_t(opt, f)};
  if (opt.mode != "closed" && opt.mode != "brute" && opt.mode != "both") {
    throw InvalidArgument("--mode must be closed, brute or both");
  }
  const bool want_closed = opt.mode != "brute";
  const bool want_brute = opt.mode != "closed";
  if (want_closed && spec.t.index == 0) {
    throw InvalidArgument("closed-form sphere transform requires t != 0");
  }
  const std::uint64_t sphere_size = sphere_points(space, spec).size();

  std::vector<std::uint64_t> freqs;
  if (opt.m) {
    Point m;
    for (auto c : *opt.m) m.push_back(f.element(c));
    freqs.push_back(space.index(m));
  } else {
    for (std::uint64_t i = 0; i < space.size(); ++i) freqs.push_back(i);
  }

  int code = 0;
  std::optional<FourierTable> closed, brute;
  if (opt.m) {
    const Point m = space.point(freqs.front());
    if (want_closed) closed = FourierTable{space, {sphere_ft(*ctx.chars, space, m, spec, FtMode::closed)}};
    if (want_brute) brute = FourierTable{space, {sphere_ft(*ctx.chars, space, m, spec, FtMode::brute)}};
  } else {
    if (want_closed) closed = sphere_ft_table(*ctx.chars, space, spec, FtMode::closed);
    if (want_brute) brute = sphere_ft_table(*ctx.chars, space, spec, FtMode::brute);
  }
  for (std::size_t n = 0; n < freqs.size(); ++n) {
    const std::size_t slot = opt.m ? 0 : n;
    Json r = record(f, ex.d, ex.k, spec.t.index, sphere_size);
    r["components"]["m"] = point_string(space.point(freqs[n]));
    if (brute) {
      const auto& v = brute->values[slot];
      r["direct"] = v.to_string();
      if (ex.numeric) add_numeric(r["components"], "brute", v);
    }
    if (closed) {
      const auto& v = closed->values[slot];
      r["spectral"] = v.to_string();
      if (ex.numeric) add_numeric(r["components"], "closed", v);
    }
    if (brute && closed) {
      const bool eq = brute->values[slot] == closed->values[slot];
      r["equal"] = eq;
      if (!eq) code = 1;
    }
    out.push_back(std::move(r));
  }
  return code;
}

int cmd_distance_set(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto ctx = make_context(opt);
  const PointSet set = resolve_set(opt, *ctx.space);
  const auto dk = distance_set(set, ex.k);
  const auto full = distance_set(set, ex.d);
  Json r = record(*ctx.field, ex.d, ex.k, std::nullopt, set.size());
  r["direct"] = dk.size();
  auto& comp = r["components"];
  comp["distance_set"] = element_list(dk);
  comp["standard_distance_set"] = element_list(full);
  std::vector<FieldElement> missing;
  for (std::uint32_t t = 0; t < ctx.field->q(); ++t) {
    if (!std::binary_search(dk.begin(), dk.end(), FieldElement{t})) missing.push_back({t});
  }
  comp["full_coverage"] = missing.empty();
  comp["missing_radii"] = element_list(missing);
  const bool nested = std::includes(full.begin(), full.end(), dk.begin(), dk.end());
  comp["contained_in_standard"] = nested;
  out.push_back(std::move(r));
  return nested ? 0 : 1;
}

int cmd_nu(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto ctx = make_context(opt);
  const PointSet set = resolve_set(opt, *ctx.space);
  const auto reports = nu_spectrum(*ctx.chars, set, ex.k);
  const auto wanted = radii(opt, *ctx.field, false);
  int code = 0;
  std::uint64_t direct_total = 0;
  Rational spectral_total = 0;
  for (const auto& rep : reports) {
    direct_total += rep.direct;
    spectral_total += rep.spectral;
    if (!rep.equal) code = 1;
    if (std::find(wanted.begin(), wanted.end(), rep.t.index) == wanted.end()) continue;
    Json r = record(*ctx.field, ex.d, ex.k, rep.t.index, set.size());
    r["direct"] = rep.direct;
    r["spectral"] = to_string(rep.spectral);
    r["equal"] = rep.equal;
    out.push_back(std::move(r));
  }
  const std::uint64_t squared = set.size() * set.size();
  Json total = record(*ctx.field, ex.d, ex.k, std::nullopt, set.size());
  total["direct"] = direct_total;
  total["spectral"] = to_string(spectral_total);
  const bool partition = direct_total == squared && spectral_total == Rational(static_cast<unsigned long>(squared));
  total["equal"] = partition;
  total["components"]["pair_total_expected"] = squared;
  if (!partition) code = 1;
  out.push_back(std::move(total));
  return code;
}

int cmd_bounds(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto ctx = make_context(opt);
  const PointSet set = resolve_set(opt, *ctx.space);
  if (opt.t && *opt.t == 0) throw InvalidArgument("bounds requires t != 0");
  int code = 0;
  for (auto t : radii(opt, *ctx.field, true)) {
    const auto b = bounds(*ctx.chars, set, {t}, ex.k);
    Json r = record(*ctx.field, ex.d, ex.k, t, set.size());
    r["direct"] = b.nu_direct;
    r["spectral"] = to_string(b.nu_decomposed);
    r["equal"] = b.nu_equal;
    auto& c = r["components"];
    c["a_sum"] = b.a_sum.to_string();
    c["a_sum_abs"] = b.a_sum_abs;
    c["a_bound"] = b.a_bound;
    c["a_within_bound"] = b.a_within_bound;
    c["a_pointwise_max"] = b.a_pointwise_max;
    c["a_pointwise_bound"] = b.a_pointwise_bound;
    c["b_sum"] = to_string(b.b_sum);
    c["b_main"] = to_string(b.b_main);
    c["b_aux"] = to_string(b.b_aux);
    c["b_aux_abs"] = to_string(b.b_aux_abs);
    c["b_m1"] = to_string(b.b_m1);
    c["b_m1_abs"] = to_string(b.b_m1_abs);
    c["b_m1_majorant"] = to_string(b.b_m1_majorant);
    c["b_m2"] = to_string(b.b_m2);
    c["b_m2_binomial"] = to_string(b.b_m2_binomial);
    c["b_m3"] = to_string(b.b_m3);
    c["reassembled"] = b.reassembled;
    c["aux_reference"] = to_string(b.aux_reference);
    c["m1_reference"] = to_string(b.m1_reference);
    c["m3_reference"] = to_string(b.m3_reference);
    c["lower_reference"] = to_string(b.lower_reference);
    c["lower_ratio"] = b.lower_ratio ? Json(*b.lower_ratio) : Json(nullptr);
    if (ex.numeric) add_numeric(c, "a_sum", b.a_sum);
    if (!b.ok()) code = 1;
    out.push_back(std::move(r));
  }
  Json kernel = record(*ctx.field, ex.d, ex.k, std::nullopt, std::nullopt);
  Json values = Json::array();
  bool kernel_ok = true;
  for (unsigned n = 0; n <= 8; ++n) {
    const auto v = alternating_binomial_sum(n);
    values.push_back(v);
    kernel_ok = kernel_ok && v == (n == 0 ? 1 : 0);
  }
  kernel["equal"] = kernel_ok;
  kernel["components"]["binomial_kernel"] = values;
  if (!kernel_ok) code = 1;
  out.push_back(std::move(kernel));
  return code;
}

int cmd_sharpness(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  auto ctx = make_context(opt);
  const PointSet set = sharpness_example(*ctx.space, ex.k);
  const auto dk = distance_set(set, ex.k);
  std::uint64_t expected = 1;
  for (unsigned i = 0; i < ex.d - ex.k; ++i) expected *= ctx.field->q();
  Json r = record(*ctx.field, ex.d, ex.k, std::nullopt, set.size());
  r["direct"] = dk.size();
  const bool ok = set.size() == expected && dk.size() == 1 && dk.front().index == 0;
  r["equal"] = ok;
  r["components"]["expected_size"] = expected;
  r["components"]["distance_set"] = element_list(dk);
  r["components"]["full_coverage"] = dk.size() == ctx.field->q();
  out.push_back(std::move(r));
  return ok ? 0 : 1;
}

int cmd_sweep(const CommandOptions& opt, std::vector<Json>& out) {
  const auto& ex = opt.experiment;
  const auto result = threshold_sweep(ex);
  const Field f = Field::make(ex.p, ex.s);
  Rational exponent(result.doubled_exponent, 2);
  exponent.canonicalize();
  for (const auto& rec : result.records) {
    Json r = record(f, ex.d, ex.k, std::nullopt, rec.size);
    r["equal"] = rec.full_coverage;
    auto& c = r["components"];
    c["trial"] = rec.trial;
    c["substream"] = rec.substream;
    c["full_coverage"] = rec.full_coverage;
    c["missing_radii"] = element_list(rec.missing_radii);
    c["cross_checked"] = rec.cross_checked;
    c["conjectural"] = result.conjectural;
    if (ex.timing) c["runtime_ms"] = rec.runtime_ms;
    out.push_back(std::move(r));
  }
  for (const auto& sum : result.summaries) {
    Json r = record(f, ex.d, ex.k, std::nullopt, sum.size);
    auto& c = r["components"];
    c["coverage_fraction"] = to_string(sum.fraction);
    c["covered"] = sum.covered;
    c["trials"] = sum.trials;
    c["threshold_size"] = result.threshold_size;
    c["exponent"] = to_string(exponent);
    c["C"] = to_string(ex.threshold_multiplier);
    c["conjectural"] = result.conjectural;
    c["sharpness"] = ex.sharpness;
    out.push_back(std::move(r));
  }
  return result.cross_check_ok ? 0 : 1;
}

}  // namespace

CommandResult run_command(const std::string& name, const CommandOptions& options) {
  std::vector<Json> records;
  CommandResult result;
  try {
    if (options.experiment.p % 2 == 0 || !is_prime(options.experiment.p)) {
      throw InvalidArgument("p must be an odd prime");
    }
    if (name == "verify-identities") {
      result.exit_code = cmd_verify(options, records);
    } else {
      if (name != "threshold-sweep") {
        const auto& ex = options.experiment;
        if (ex.k < 1 || ex.k > ex.d) throw InvalidArgument("k must lie in [1, d]");
      }
      if (name == "sphere-ft") result.exit_code = cmd_sphere_ft(options, records);
      else if (name == "distance-set") result.exit_code = cmd_distance_set(options, records);
      else if (name == "nu") result.exit_code = cmd_nu(options, records);
      else if (name == "bounds") result.exit_code = cmd_bounds(options, records);
      else if (name == "sharpness") result.exit_code = cmd_sharpness(options, records);
      else if (name == "threshold-sweep") result.exit_code = cmd_sweep(options, records);
      else throw InvalidArgument("unknown command " + name);
    }
  } catch (const InvalidArgument& e) {
    return {std::string("error: ") + e.what() + "\n", 2};
  } catch (const IdentityViolation& e) {
    return {std::string("violation: ") + e.what() + "\n", 1};
  }
  result.output = render(records, options.experiment.format);
  return result;
}

std::vector<std::uint32_t> parse_tuple(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string cleaned;
  for (char c : text) {
    if (c != '(' && c != ')' && c != ' ') cleaned += c;
  }
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("empty coordinate in '" + text + "'");
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad coordinate '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("bad coordinate '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw InvalidArgument("empty tuple");
  return out;
}

std::vector<std::vector<std::uint32_t>> parse_points(const std::string& text) {
  std::vector<std::vector<std::uint32_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_tuple(item));
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw InvalidArgument("bad rational '" + text + "'");
  if (r.get_den() == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

void apply_config_json(const std::string& json_text, CommandOptions& opt,
                       const std::vector<std::string>& explicit_keys) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config: top level must be an object");
  auto& ex = opt.experiment;
  auto skip = [&](const std::string& key) {
    return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
  };
  try {
    for (const auto& [key, v] : doc.items()) {
      if (skip(key)) continue;
      if (key == "p") ex.p = v.get<unsigned>();
      else if (key == "s") ex.s = v.get<unsigned>();
      else if (key == "q") {
        if (skip("p") || skip("s")) continue;
        const Field f = Field::from_order(v.get<std::uint64_t>());
        ex.p = f.p();
        ex.s = f.s();
      } else if (key == "d") ex.d = v.get<unsigned>();
      else if (key == "k") ex.k = v.get<unsigned>();
      else if (key == "t") opt.t = v.get<std::uint32_t>();
      else if (key == "m") opt.m = v.is_string() ? parse_tuple(v.get<std::string>())
                                                 : v.get<std::vector<std::uint32_t>>();
      else if (key == "mode") opt.mode = v.get<std::string>();
      else if (key == "seed") ex.seed = v.get<std::uint64_t>();
      else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f != "json" && f != "csv") throw InvalidArgument("config: format must be json or csv");
        ex.format = f == "csv" ? OutputFormat::csv : OutputFormat::json;
      } else if (key == "cap") ex.cap = v.get<std::uint64_t>();
      else if (key == "C") ex.threshold_multiplier =
          v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
      else if (key == "trials") ex.trials = v.get<unsigned>();
      else if (key == "sizes") {
        if (v.is_string() && v.get<std::string>() == "auto") ex.sizes.clear();
        else ex.sizes = v.get<std::vector<std::uint64_t>>();
      } else if (key == "points") opt.points = v.is_string() ? parse_points(v.get<std::string>())
                                                             : v.get<std::vector<std::vector<std::uint32_t>>>();
      else if (key == "size") opt.size = v.get<std::uint64_t>();
      else if (key == "trial") opt.trial = v.get<std::uint64_t>();
      else if (key == "sharpness") ex.sharpness = v.get<bool>();
      else if (key == "numeric") ex.numeric = v.get<bool>();
      else if (key == "timing") ex.timing = v.get<bool>();
      else if (key == "out" || key == "config") continue;
      else throw InvalidArgument("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

}  // namespace ffdist
