#include "pcband/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcband/bandscan.hpp"
#include "pcband/errors.hpp"
#include "pcband/json_io.hpp"
#include "pcband/oracle.hpp"

namespace pcband {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}
std::string g10(double v) { return fmt("%.10g", v); }
std::string g12(double v) { return fmt("%.12g", v); }

const char* state_name(const ScanSample& s) {
  if (s.failed) return "failed";
  switch (s.state.kind) {
    case BandState::Kind::Allowed: return "allowed";
    case BandState::Kind::Edge: return "edge";
    case BandState::Kind::Forbidden: return "forbidden";
  }
  return "?";
}

// Flags shared by every subcommand.
struct CommonArgs {
  std::string profile;
  std::string pol = "te";
  double na = 1.0;
  double theta_deg = 0.0;
  double omega_min = 0.01;
  double omega_max = 1.5;
  std::string out_path;

  Polarization polarization() const {
    return pol == "tm" ? Polarization::TM : Polarization::TE;
  }
  IncidenceConfig incidence() const {
    return IncidenceConfig::make(na, theta_deg * kPi / 180.0);
  }
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--profile", a.profile,
                  "canonical profile name or JSON profile path")
      ->required();
  cmd->add_option("--pol", a.pol, "polarization")
      ->check(CLI::IsMember({"te", "tm"}))
      ->capture_default_str();
  cmd->add_option("--na", a.na, "ambient refractive index")
      ->capture_default_str();
  cmd->add_option("--theta-deg", a.theta_deg, "incidence angle in degrees")
      ->capture_default_str();
  cmd->add_option("--omega-min", a.omega_min,
                  "lower normalized frequency L/lambda0")
      ->capture_default_str();
  cmd->add_option("--omega-max", a.omega_max,
                  "upper normalized frequency L/lambda0")
      ->capture_default_str();
  cmd->add_option("--out", a.out_path, "output file (default: stdout)");
}

Pathway parse_pathway(const std::string& s) {
  if (s == "symmetric") return Pathway::Symmetric;
  if (s == "general") return Pathway::General;
  if (s == "stratified") return Pathway::Stratified;
  return Pathway::Auto;
}

// Run `write` against --out (binary, LF) or the session stream.
int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file: " << path << "\n";
    return 2;
  }
  write(file);
  file.flush();
  if (!file) {
    err << "error: writing output file failed: " << path << "\n";
    return 2;
  }
  return 0;
}

void write_csv(std::ostream& os, const BandStructure& bs) {
  os << "omega,cos_kl,kappa_L,xi,state,band\n";
  for (const ScanSample& s : bs.samples) {
    os << g10(s.omega_norm) << ',';
    if (s.failed) {
      os << ",,,failed," << s.band_index << '\n';
      continue;
    }
    os << g12(s.cos_kl) << ',';
    const bool forbidden = s.state.kind == BandState::Kind::Forbidden;
    if (!forbidden) os << g12(s.state.kappa_L);
    os << ',';
    if (forbidden) os << g12(s.state.xi);
    os << ',' << state_name(s) << ',' << s.band_index << '\n';
  }
}

nlohmann::json gaps_to_json(const std::vector<GapInterval>& gaps) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const GapInterval& g = gaps[i];
    arr.push_back({{"index", i},
                   {"omega_lo", g.omega_lo},
                   {"omega_hi", g.omega_hi},
                   {"width", g.omega_hi - g.omega_lo},
                   {"max_xi", g.max_xi},
                   {"half_open_lo", g.half_open_lo},
                   {"half_open_hi", g.half_open_hi}});
  }
  return arr;
}

void write_scan_json(std::ostream& os, const BandStructure& bs,
                     const std::string& label) {
  nlohmann::json doc;
  doc["profile"] = label;
  doc["pathway"] = pathway_name(bs.pathway_used);
  nlohmann::json samples = nlohmann::json::array();
  for (const ScanSample& s : bs.samples) {
    nlohmann::json rec{{"omega", s.omega_norm},
                       {"state", state_name(s)},
                       {"band", s.band_index}};
    if (!s.failed) {
      rec["cos_kl"] = s.cos_kl;
      if (s.state.kind == BandState::Kind::Forbidden)
        rec["xi"] = s.state.xi;
      else
        rec["kappa_L"] = s.state.kappa_L;
    }
    if (!s.note.empty()) rec["note"] = s.note;
    samples.push_back(std::move(rec));
  }
  doc["samples"] = std::move(samples);
  doc["gaps"] = gaps_to_json(bs.gaps);
  os << doc.dump(2) << '\n';
}

void write_gnuplot(std::ostream& os, const BandStructure& bs,
                   const CommonArgs& args, const std::string& label) {
  os << "# band structure: profile=" << label << " pol=" << args.pol
     << " theta_deg=" << g10(args.theta_deg)
     << " pathway=" << pathway_name(bs.pathway_used) << "\n";
  os << "# allowed samples: omega  kappa_L  cos_kl  band\n";
  for (const ScanSample& s : bs.samples) {
    if (s.failed || s.state.kind == BandState::Kind::Forbidden) continue;
    os << g10(s.omega_norm) << "  " << g12(s.state.kappa_L) << "  "
       << g12(s.cos_kl) << "  " << s.band_index << '\n';
  }
  os << "\n\n";
  os << "# gap intervals: omega_lo  omega_hi  max_xi\n";
  for (const GapInterval& g : bs.gaps)
    os << g10(g.omega_lo) << "  " << g10(g.omega_hi) << "  " << g12(g.max_xi)
       << '\n';
}

void write_gaps_text(std::ostream& os, const std::vector<GapInterval>& gaps) {
  os << "# index omega_lo omega_hi width max_xi\n";
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const GapInterval& g = gaps[i];
    os << i << ' ' << g10(g.omega_lo) << ' ' << g10(g.omega_hi) << ' '
       << g10(g.omega_hi - g.omega_lo) << ' ' << g12(g.max_xi) << '\n';
  }
}

BandStructure run_scan(const ProfileSource& src, const CommonArgs& args,
                       int samples, const std::string& pathway) {
  ScanConfig cfg;
  cfg.omega_min = args.omega_min;
  cfg.omega_max = args.omega_max;
  cfg.samples = samples;
  cfg.pol = args.polarization();
  cfg.inc = args.incidence();
  cfg.pathway = parse_pathway(pathway);
  return src.profile ? scan(*src.profile, cfg) : scan(*src.stack, cfg);
}

int cmd_verify(const CommonArgs& args, int grid_n, std::string oracle_sel,
               double tol, bool tol_set, std::ostream& out,
               std::ostream& err) {
  const ProfileSource src = resolve_profile_arg(args.profile);
  const IncidenceConfig inc = args.incidence();
  const Polarization pol = args.polarization();
  const bool exact_medium =
      src.stack.has_value() || src.profile->piecewise_constant;
  const double threshold = tol_set ? tol : (exact_medium ? 1e-8 : 1e-3);

  // Oracle selection and evaluation below answer with exit 3 when a
  // reference is not applicable to this medium.
  try {
    std::vector<std::string> kinds;
    if (oracle_sel == "all") {
      kinds.push_back("monodromy");
      if (src.profile) kinds.push_back("staircase");
      if (src.stack && src.stack->layers.size() == 2)
        kinds.push_back("two-layer");
    } else {
      if (oracle_sel == "two-layer" &&
          !(src.stack && src.stack->layers.size() == 2))
        throw precondition_error(
            "two-layer oracle needs a medium given as exactly two layers");
      if (oracle_sel == "staircase" && !src.profile)
        throw precondition_error(
            "staircase oracle applies to profile media, not layer stacks");
      kinds.push_back(oracle_sel);
    }

    const DispersionEvaluator ev =
        src.profile ? DispersionEvaluator(*src.profile, inc, pol)
                    : DispersionEvaluator(*src.stack, inc, pol);
    const double L = ev.period();

    const std::size_t points = std::size_t(grid_n);
    std::vector<double> omegas(points), k0s(points), dtmm(points);
    for (std::size_t i = 0; i < points; ++i) {
      omegas[i] = args.omega_min + (args.omega_max - args.omega_min) *
                                       double(i) / double(points - 1);
      k0s[i] = 2.0 * kPi * omegas[i] / L;
      dtmm[i] = ev(omegas[i], nullptr);
    }

    std::vector<OracleReport> records;
    for (const std::string& kind : kinds) {
      std::vector<double> ref(points);
      if (kind == "monodromy") {
        const kernels::MonodromyTables tables =
            src.profile ? build_monodromy_tables(*src.profile, inc)
                        : build_monodromy_tables(*src.stack, inc);
        monodromy_sweep(tables, pol, k0s, ref);
      } else if (kind == "staircase") {
        for (std::size_t i = 0; i < points; ++i)
          ref[i] = staircase_limit_cos(*src.profile, inc, k0s[i], pol, 512);
      } else {  // two-layer
        const auto& l = src.stack->layers;
        for (std::size_t i = 0; i < points; ++i)
          ref[i] = analytic_two_layer(l[0].n, l[1].n, l[0].d, l[1].d, inc,
                                      k0s[i], pol);
      }
      for (std::size_t i = 0; i < points; ++i) {
        OracleReport r;
        r.omega_norm = omegas[i];
        r.dtmm_value = dtmm[i];
        r.oracle_value = ref[i];
        r.abs_error = std::fabs(r.dtmm_value - r.oracle_value);
        r.oracle_kind = kind;
        records.push_back(std::move(r));
      }
    }

    nlohmann::json summary;
    double global_max = 0.0;
    for (const std::string& kind : kinds) {
      double max_err = 0.0, sum = 0.0;
      int count = 0;
      for (const OracleReport& r : records)
        if (r.oracle_kind == kind) {
          max_err = std::max(max_err, r.abs_error);
          sum += r.abs_error;
          ++count;
        }
      summary[kind] = {{"max_abs_error", max_err},
                       {"mean_abs_error", count ? sum / count : 0.0},
                       {"points", count}};
      global_max = std::max(global_max, max_err);
    }
    const bool pass = global_max <= threshold;

    nlohmann::json doc;
    doc["profile"] = src.label;
    doc["pol"] = args.pol;
    doc["theta_deg"] = args.theta_deg;
    doc["na"] = args.na;
    doc["pathway"] = pathway_name(ev.pathway_used());
    doc["omega_min"] = args.omega_min;
    doc["omega_max"] = args.omega_max;
    doc["points"] = grid_n;
    doc["threshold"] = threshold;
    doc["max_abs_error"] = global_max;
    doc["pass"] = pass;
    doc["summary"] = std::move(summary);
    nlohmann::json recs = nlohmann::json::array();
    for (const OracleReport& r : records)
      recs.push_back({{"omega", r.omega_norm},
                      {"dtmm", r.dtmm_value},
                      {"oracle", r.oracle_value},
                      {"abs_error", r.abs_error},
                      {"kind", r.oracle_kind}});
    doc["records"] = std::move(recs);

    const int io = with_output(args.out_path, out, err, [&](std::ostream& os) {
      os << doc.dump(2) << '\n';
    });
    if (io != 0) return io;
    return pass ? 0 : 1;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"one-dimensional photonic band structures by transfer matrices"};
  app.name("pcband");
  app.require_subcommand(1);

  CommonArgs scan_args;
  int scan_samples = 600;
  std::string scan_pathway = "auto";
  std::string scan_format = "csv";
  CLI::App* scan_cmd =
      app.add_subcommand("scan", "sweep a frequency range and classify bands");
  add_common(scan_cmd, scan_args);
  scan_cmd->add_option("--samples", scan_samples, "frequency sample count")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  scan_cmd->add_option("--pathway", scan_pathway, "evaluation route")
      ->check(CLI::IsMember({"auto", "symmetric", "general", "stratified"}))
      ->capture_default_str();
  scan_cmd->add_option("--format", scan_format, "output format")
      ->check(CLI::IsMember({"csv", "json", "gnuplot"}))
      ->capture_default_str();

  CommonArgs gaps_args;
  int gaps_samples = 600;
  std::string gaps_pathway = "auto";
  std::string gaps_format = "text";
  CLI::App* gaps_cmd =
      app.add_subcommand("gaps", "report the forbidden intervals of a scan");
  add_common(gaps_cmd, gaps_args);
  gaps_cmd->add_option("--samples", gaps_samples, "frequency sample count")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  gaps_cmd->add_option("--pathway", gaps_pathway, "evaluation route")
      ->check(CLI::IsMember({"auto", "symmetric", "general", "stratified"}))
      ->capture_default_str();
  gaps_cmd->add_option("--format", gaps_format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CommonArgs verify_args;
  int verify_grid = 40;
  std::string verify_oracle = "all";
  double verify_tol = 0.0;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "compare the production values against reference oracles");
  add_common(verify_cmd, verify_args);
  verify_cmd->add_option("--omega-grid", verify_grid, "verification points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  verify_cmd->add_option("--oracle", verify_oracle, "reference selection")
      ->check(CLI::IsMember({"monodromy", "staircase", "two-layer", "all"}))
      ->capture_default_str();
  CLI::Option* tol_opt =
      verify_cmd->add_option("--tol", verify_tol,
                             "override the pass threshold (absolute error)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (scan_cmd->parsed()) {
      const ProfileSource src = resolve_profile_arg(scan_args.profile);
      const BandStructure bs =
          run_scan(src, scan_args, scan_samples, scan_pathway);
      return with_output(scan_args.out_path, out, err, [&](std::ostream& os) {
        if (scan_format == "csv")
          write_csv(os, bs);
        else if (scan_format == "json")
          write_scan_json(os, bs, src.label);
        else
          write_gnuplot(os, bs, scan_args, src.label);
      });
    }
    if (gaps_cmd->parsed()) {
      const ProfileSource src = resolve_profile_arg(gaps_args.profile);
      const BandStructure bs =
          run_scan(src, gaps_args, gaps_samples, gaps_pathway);
      return with_output(gaps_args.out_path, out, err, [&](std::ostream& os) {
        if (gaps_format == "json") {
          nlohmann::json doc;
          doc["profile"] = src.label;
          doc["pathway"] = pathway_name(bs.pathway_used);
          doc["gaps"] = gaps_to_json(bs.gaps);
          os << doc.dump(2) << '\n';
        } else {
          write_gaps_text(os, bs.gaps);
        }
      });
    }
    return cmd_verify(verify_args, verify_grid, verify_oracle, verify_tol,
                      !tol_opt->empty(), out, err);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace pcband
