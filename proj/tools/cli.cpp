#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "tfspec/concentration.hpp"
#include "tfspec/errors.hpp"
#include "tfspec/gaussian.hpp"
#include "tfspec/lti.hpp"
#include "tfspec/numerics.hpp"
#include "tfspec/pswf.hpp"

namespace tfspec::cli {

namespace {

using nlohmann::json;

std::string format_number_impl(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot open output file: " + out_path);
  f << text;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number_impl(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

// Flat key,value table for records when --format csv is selected.
void flatten_json(const json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    std::size_t k = 0;
    for (const auto& el : j) {
      flatten_json(el, prefix + "[" + std::to_string(k++) + "]", out);
    }
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_number_impl(j.get<double>()));
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string record_to_text(const json& j, const std::string& format) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> kv;
    flatten_json(round_numbers(j), "", kv);
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << k << ',' << v << '\n';
    return os.str();
  }
  return round_numbers(j).dump(2) + "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON config: ") + e.what());
  }
  return j;
}

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw InputError("cannot parse coefficient '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty coefficient list");
  return out;
}

// ---- check ----------------------------------------------------------------

SpecSheet spec_from_json(const json& j, FeasibilityOptions& opt) {
  static const char* known[] = {"T", "delta", "E", "E1", "W", "beta", "beta1", "beta1_prime"};
  std::vector<std::string> missing;
  for (const char* field : {"T", "delta", "E"}) {
    if (!j.contains(field)) missing.emplace_back(field);
  }
  if (!missing.empty()) {
    std::string msg = "spec sheet is missing required fields:";
    for (const auto& m : missing) msg += " " + m;
    throw MissingFieldError(msg);
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok |= (it.key() == k);
    if (!ok) throw InputError("unknown spec-sheet field: " + it.key());
  }

  SpecSheet s;
  s.horizon = j.at("T").get<double>();
  s.deviation = j.at("delta").get<double>();
  s.energy = j.at("E").get<double>();
  if (j.contains("W")) s.band_edge = j.at("W").get<double>();
  if (j.contains("beta")) s.beta = j.at("beta").get<double>();
  if (j.contains("E1")) s.l1_energy = j.at("E1").get<double>();
  if (j.contains("beta1")) opt.beta1 = j.at("beta1").get<double>();
  if (j.contains("beta1_prime")) opt.beta1_prime = j.at("beta1_prime").get<double>();
  s.validate();
  return s;
}

int cmd_check(const std::string& config_path, const std::string& out_path,
              const std::string& format, double tol) {
  if (config_path.empty()) throw InputError("check requires --config <spec.json>");
  FeasibilityOptions opt;
  opt.slack = tol;
  const json cfg = load_json_file(config_path);
  const SpecSheet spec = spec_from_json(cfg, opt);
  const Verdict v = spec_feasible(spec, opt);

  json rec = verdict_to_json(v);
  rec["inputs"] = cfg;
  write_text(out_path, record_to_text(rec, format));
  return v.feasible ? 0 : 1;
}

// ---- spectrum ---------------------------------------------------------------

int cmd_spectrum(double c_min, double c_max, std::size_t points, std::size_t n_max,
                 std::size_t quad_order, const std::string& out_path) {
  if (!(c_min > 0.0) || !(c_max >= c_min) || points == 0) {
    throw InputError("spectrum: need 0 < c-min <= c-max and points >= 1");
  }
  std::vector<std::string> header{"c"};
  for (std::size_t k = 0; k <= n_max; ++k) header.push_back("lambda_" + std::to_string(k));
  header.push_back("lambda0_asymptotic");

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < points; ++i) {
    const double c = points == 1
                         ? c_min
                         : c_min + (c_max - c_min) * static_cast<double>(i) /
                               static_cast<double>(points - 1);
    const auto tbp = TimeBandwidthProduct::from_c(c);
    const ProlateSpectrum s = compute_spectrum(tbp, n_max, quad_order);
    std::vector<double> row{c};
    for (double l : s.eigenvalues) row.push_back(l);
    row.push_back(lambda0_asymptotic(tbp));
    rows.push_back(std::move(row));
  }
  write_text(out_path, to_csv(header, rows));
  return 0;
}

// ---- design -----------------------------------------------------------------

int cmd_design(std::optional<double> t_r, std::optional<double> t_s,
               std::optional<double> sigma_w, const std::string& curves_path,
               const std::string& out_path, const std::string& format) {
  const int given = int(t_r.has_value()) + int(t_s.has_value()) + int(sigma_w.has_value());
  if (given != 1) {
    throw InputError("design requires exactly one of --rise-time, --settling-time, --freq-std");
  }
  GaussianDesign d{1.0};
  if (t_r) d = design_from_rise_time(*t_r);
  if (t_s) d = design_from_settling_time(*t_s);
  if (sigma_w) d = design_from_freq_std(*sigma_w);

  const BandwidthProducts prod = products(d);
  json rec{{"a", d.a},
           {"rise_time", rise_time(d)},
           {"settling_time", settling_time(d)},
           {"freq_std", freq_std(d)},
           {"rise_product", prod.rise_product},
           {"settle_product", prod.settle_product}};
  write_text(out_path, record_to_text(rec, format));

  if (!curves_path.empty()) {
    const double t_end = 2.5 * settling_time(d);
    const std::size_t n = 1001;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
      rows.push_back({t, step(d, t), impulse(d, t)});
    }
    write_text(curves_path, to_csv({"t", "step", "impulse"}, rows));
  }
  return 0;
}

// ---- analyze ----------------------------------------------------------------

int cmd_analyze(const std::string& num_text, const std::string& den_text,
                const std::string& config_path, const std::string& out_path,
                const std::string& format) {
  std::vector<double> num, den;
  if (!config_path.empty()) {
    const json cfg = load_json_file(config_path);
    if (!cfg.contains("num") || !cfg.contains("den")) {
      throw MissingFieldError("analyze config must contain fields: num den");
    }
    num = cfg.at("num").get<std::vector<double>>();
    den = cfg.at("den").get<std::vector<double>>();
  } else {
    if (num_text.empty() || den_text.empty()) {
      throw InputError("analyze requires --num and --den (ascending coefficients) or --config");
    }
    num = parse_coeff_list(num_text);
    den = parse_coeff_list(den_text);
  }

  const RationalSystem sys = RationalSystem::create(num, den);
  const StepMetrics m = step_metrics(sys);

  json jm{{"t_r_slope", m.t_r_slope},
          {"overshoot", m.overshoot},
          {"steady_state", m.steady_state},
          {"settling_band", m.settling_band},
          {"horizon_ok", m.horizon_ok}};
  auto put_opt = [&jm](const char* key, const std::optional<double>& v) {
    if (v) {
      jm[key] = *v;
    } else {
      jm[key] = nullptr;
    }
  };
  put_opt("t_r_1090", m.t_r_1090);
  put_opt("t_r_full", m.t_r_full);
  put_opt("t_p", m.t_p);
  put_opt("t_s", m.t_s);

  json rec{{"num", sys.num()}, {"den", sys.den()}, {"dc_gain", sys.dc_gain()}, {"metrics", jm}};
  json jp = json::array();
  for (const auto& p : sys.poles()) jp.push_back({p.real(), p.imag()});
  rec["poles"] = jp;

  try {
    const double wb = bandwidth_integral(sys);
    rec["bandwidth_integral"] = wb;
    rec["rise_bandwidth_product"] = m.t_r_slope * wb;
  } catch (const NonIntegrableError& e) {
    rec["bandwidth_integral"] = nullptr;
    rec["bandwidth_integral_error"] = e.what();
  }
  try {
    const double w3 = bandwidth_3db(sys);
    rec["bandwidth_3db"] = w3;
    // Rule-of-thumb product, reported but never asserted anywhere.
    if (m.t_r_1090) rec["product_1090_3db"] = *m.t_r_1090 * w3;
  } catch (const NoCrossingError& e) {
    rec["bandwidth_3db"] = nullptr;
    rec["bandwidth_3db_error"] = e.what();
  }

  write_text(out_path, record_to_text(rec, format));
  return 0;
}

// ---- extremal ---------------------------------------------------------------

int cmd_extremal(double alpha, std::optional<double> c_value, std::optional<double> band,
                 std::optional<double> slot, const std::string& out_path,
                 const std::string& format, const std::string& signal_path) {
  TimeBandwidthProduct c = TimeBandwidthProduct::from_c(1.0);
  if (c_value) {
    if (band || slot) throw InputError("extremal: give either --c or both --W and --T");
    c = TimeBandwidthProduct::from_c(*c_value);
  } else if (band && slot) {
    c = TimeBandwidthProduct::from_band_and_slot(*band, *slot);
  } else {
    throw InputError("extremal: give either --c or both --W and --T");
  }

  const ExtremalSignal ext = extremal_signal(alpha, c);
  const MeasuredPair mp = extremal_measured_pair(ext);

  json rec{{"alpha_target", alpha},
           {"c", c.c()},
           {"lambda0", ext.lambda0},
           {"p", ext.p},
           {"q", ext.q},
           {"alpha_measured", mp.alpha},
           {"beta_measured", mp.beta},
           {"eq8_margin", mp.margin}};
  write_text(out_path, record_to_text(rec, format));

  if (!signal_path.empty()) {
    const std::size_t stride = std::max<std::size_t>(1, ext.h.size() / 20000);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < ext.h.size(); i += stride) {
      rows.push_back({ext.h.t(i), ext.h.values[i]});
    }
    write_text(signal_path, to_csv({"t", "h"}, rows));
  }
  return 0;
}

// ---- figdata ----------------------------------------------------------------

double psi0_profile(const ProlateSpectrum& s, double tau) {
  return eval_pswf_extended(s, 0, tau);
}

int cmd_figdata(int figure, const std::string& out_path) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  switch (figure) {
    case 2: {
      const double sqrt_a[] = {0.1, 0.5, 1.0, 5.0, 20.0};
      header = {"t", "u_sqrta_0.1", "u_sqrta_0.5", "u_sqrta_1", "u_sqrta_5", "u_sqrta_20"};
      // The slowest family member reaches its steady value near t = 35.
      for (std::size_t i = 0; i <= 2000; ++i) {
        const double t = 40.0 * static_cast<double>(i) / 2000.0;
        std::vector<double> row{t};
        for (double sa : sqrt_a) row.push_back(step(GaussianDesign{sa * sa}, t));
        rows.push_back(std::move(row));
      }
      break;
    }
    case 3: {
      header = {"c", "lambda0", "lambda0_asymptotic"};
      for (int i = 1; i <= 32; ++i) {
        const double c = 0.25 * i;
        const auto tbp = TimeBandwidthProduct::from_c(c);
        rows.push_back({c, leading_eigenvalues(tbp, 128, 1)[0], lambda0_asymptotic(tbp)});
      }
      break;
    }
    case 4: {
      header = {"tau", "psi0_c8", "psi0_c4", "psi0_c2"};
      const ProlateSpectrum s8 = compute_spectrum(TimeBandwidthProduct::from_c(8.0), 0);
      const ProlateSpectrum s4 = compute_spectrum(TimeBandwidthProduct::from_c(4.0), 0);
      const ProlateSpectrum s2 = compute_spectrum(TimeBandwidthProduct::from_c(2.0), 0);
      for (int i = 0; i <= 800; ++i) {
        const double tau = -1.0 + 4.0 * i / 800.0;
        rows.push_back(
            {tau, psi0_profile(s8, tau), psi0_profile(s4, tau), psi0_profile(s2, tau)});
      }
      break;
    }
    case 5: {
      header = {"tau", "psi0_c8"};
      const ProlateSpectrum s8 = compute_spectrum(TimeBandwidthProduct::from_c(8.0), 0);
      for (int i = 1; i <= 1000; ++i) {
        const double tau = 1.0 + 2.0 * i / 1000.0;
        rows.push_back({tau, psi0_profile(s8, tau)});
      }
      break;
    }
    default:
      throw InputError("figdata: unknown figure id (expected 2, 3, 4 or 5)");
  }
  write_text(out_path, to_csv(header, rows));
  return 0;
}

}  // namespace

std::string format_number(double x) { return format_number_impl(x); }

json round_numbers(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_numbers(it.value());
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& el : j) out.push_back(round_numbers(el));
    return out;
  }
  if (j.is_number_float()) return round_sig(j.get<double>(), 12);
  return j;
}

json verdict_to_json(const Verdict& v) {
  json details = json::array();
  for (const CheckDetail& d : v.details) {
    json jd{{"name", d.name}, {"lhs", d.lhs},   {"rhs", d.rhs},
            {"margin", d.margin}, {"pass", d.pass}};
    if (!d.note.empty()) jd["note"] = d.note;
    details.push_back(jd);
  }
  return json{{"feasible", v.feasible},
              {"margin", v.margin},
              {"governing_test", v.governing_test},
              {"details", details}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.feasible = j.at("feasible").get<bool>();
  v.margin = j.at("margin").get<double>();
  v.governing_test = j.at("governing_test").get<std::string>();
  for (const auto& jd : j.at("details")) {
    CheckDetail d;
    d.name = jd.at("name").get<std::string>();
    d.lhs = jd.at("lhs").get<double>();
    d.rhs = jd.at("rhs").get<double>();
    d.margin = jd.at("margin").get<double>();
    d.pass = jd.at("pass").get<bool>();
    if (jd.contains("note")) d.note = jd.at("note").get<std::string>();
    v.details.push_back(std::move(d));
  }
  return v;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"time/frequency feasibility analysis of control specifications"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, format = "json";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "input document (JSON)");
  app.add_option("--out", out_path, "output path (stdout when omitted)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "random seed (reserved; commands are deterministic)");
  app.add_option("--tol", tol, "strictness slack for feasibility inequalities");

  auto* sc_spectrum = app.add_subcommand("spectrum", "prolate eigenvalue table over a c range");
  double c_min = 0.25, c_max = 8.0;
  std::size_t points = 32, n_max = 0, quad_order = 128;
  sc_spectrum->add_option("--c-min", c_min, "lowest c");
  sc_spectrum->add_option("--c-max", c_max, "highest c");
  sc_spectrum->add_option("--points", points, "number of c samples");
  sc_spectrum->add_option("--n-max", n_max, "highest mode index");
  sc_spectrum->add_option("--quad-order", quad_order, "discretization order");

  auto* sc_check = app.add_subcommand("check", "feasibility verdict for a spec sheet");

  auto* sc_design = app.add_subcommand("design", "Gaussian monotonic-response design");
  std::optional<double> t_r, t_s, sigma_w;
  std::string curves_path;
  sc_design->add_option("--rise-time", t_r, "target 10-90% rise time");
  sc_design->add_option("--settling-time", t_s, "target 3% settling time");
  sc_design->add_option("--freq-std", sigma_w, "target transform profile width");
  sc_design->add_option("--curves", curves_path, "also write sampled step/impulse CSV here");

  auto* sc_analyze = app.add_subcommand("analyze", "transient and bandwidth metrics of H(s)");
  std::string num_text, den_text;
  sc_analyze->add_option("--num", num_text, "numerator coefficients, ascending, comma separated");
  sc_analyze->add_option("--den", den_text, "denominator coefficients, ascending");

  auto* sc_extremal = app.add_subcommand("extremal", "equality-attaining concentration signal");
  double alpha = 0.0;
  std::optional<double> c_value, band, slot;
  sc_extremal->add_option("--alpha", alpha, "target time concentration (root)")->required();
  sc_extremal->add_option("--c", c_value, "time-bandwidth product");
  sc_extremal->add_option("--W", band, "band edge, rad/s");
  sc_extremal->add_option("--T", slot, "slot length, s");
  std::string signal_path;
  sc_extremal->add_option("--signal-out", signal_path, "write the sampled signal CSV here");

  auto* sc_figdata = app.add_subcommand("figdata", "plot-ready datasets");
  int figure = 0;
  sc_figdata->add_option("--figure", figure, "figure id: 2, 3, 4 or 5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_spectrum->parsed()) {
      return cmd_spectrum(c_min, c_max, points, n_max, quad_order, out_path);
    }
    if (sc_check->parsed()) return cmd_check(config_path, out_path, format, tol);
    if (sc_design->parsed()) {
      return cmd_design(t_r, t_s, sigma_w, curves_path, out_path, format);
    }
    if (sc_analyze->parsed()) {
      return cmd_analyze(num_text, den_text, config_path, out_path, format);
    }
    if (sc_extremal->parsed()) {
      return cmd_extremal(alpha, c_value, band, slot, out_path, format, signal_path);
    }
    if (sc_figdata->parsed()) return cmd_figdata(figure, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no command\n";
  return 2;
}

}  // namespace tfspec::cli
