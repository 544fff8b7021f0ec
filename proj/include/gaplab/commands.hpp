#pragma once

// Command-line front end. Every command reads a RunConfig, writes its
// artifacts into the output directory, and finishes with manifest.json
// (config echo plus SHA-256 of each artifact). Needs CLI11 and OpenSSL.

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaplab/config.hpp"
#include "gaplab/error.hpp"
#include "gaplab/gaplabel.hpp"
#include "gaplab/operator.hpp"
#include "gaplab/scheme.hpp"
#include "gaplab/spectrum.hpp"
#include "gaplab/system.hpp"
#include "gaplab/transversal.hpp"
#include "json.hpp"

namespace gaplab {

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256: digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary);
    f << content;
    if (!f) throw Error("cannot write '" + (dir_ / name).string() + "'");
    hashes_[name] = sha256_hex(content);
  }

  void write_manifest(const std::string& command, const RunConfig& cfg) {
    nlohmann::json artifacts = nlohmann::json::object();
    for (const auto& [name, h] : hashes_) artifacts[name] = {{"sha256", h}};
    const nlohmann::json m = {{"command", command}, {"config", to_json(cfg)}, {"artifacts", artifacts}};
    std::ofstream f(dir_ / "manifest.json", std::ios::binary);
    f << m.dump(2) << '\n';
  }

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> hashes_;
};

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  bool quiet = false;
  std::vector<std::string> sets;  // KEY=VALUE overrides
};

inline RunConfig load_run_config(const CliOptions& o) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!o.config_path.empty()) pairs = parse_pairs(read_config_file(o.config_path));
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    const std::string key = detail::trim(s.substr(0, eq));
    std::erase_if(pairs, [&](const auto& p) { return p.first == key; });
    pairs.emplace_back(key, detail::trim(s.substr(eq + 1)));
  }
  RunConfig c = config_from_pairs(pairs);
  if (!o.out_dir.empty()) c.out = o.out_dir;
  if (o.threads > 0) c.threads = o.threads;
  return c;
}

namespace cmd {

inline QuasiWord generated_word(const SystemSpec& sys, std::size_t len) {
  switch (sys.kind) {
    case SystemKind::quasicrystal: return mechanical_word(sys.scheme, len);
    case SystemKind::periodic: return periodic_word(sys.pattern, len);
    case SystemKind::free: return periodic_word("B", len);
    case SystemKind::shuffled: check_size(sys, len); return system_word(sys, len);
  }
  throw InvalidArgument("generate: unknown system");
}

inline int generate(const RunConfig& c, std::ostream& out, bool quiet) {
  check_common(c);
  const SystemSpec sys = resolve_system(c.x);
  const QuasiWord w = generated_word(sys, c.length);
  const PointSet ps = points_from_word(w, c.origin, sys.scheme.spacing_a, sys.scheme.spacing_b);
  ArtifactWriter aw(c.out);
  aw.write("word.txt", w.letters + "\n");
  std::ostringstream pos;
  pos << "index,x\n";
  for (std::size_t i = 0; i < ps.positions.size(); ++i) pos << i << ',' << format_real(ps.positions[i]) << '\n';
  aw.write("positions.csv", pos.str());
  aw.write_manifest("generate", c);
  if (!quiet) {
    out << (w.size() <= 80 ? w.letters : w.letters.substr(0, 80) + "...") << '\n';
    out << "length " << w.size() << "  A " << w.count('A') << "  B " << w.count('B') << "  r "
        << format_real(uniform_discreteness(ps)) << '\n';
  }
  return 0;
}

inline int spectrum(const RunConfig& c, std::ostream& out, bool quiet) {
  check_common(c);
  const SystemSpec sys = resolve_system(c.x);
  check_size(sys, c.size);
  const ApproximantOperator op = system_operator(sys, c.size);
  const SpectralData spec = eigenvalues(op, kDefaultDenseLimit, resolve_threads(c.threads));
  const auto [g_lo, g_hi] = op.gershgorin();
  const auto grid = uniform_grid(c.e_min.value_or(g_lo), c.e_max.value_or(g_hi), static_cast<std::size_t>(c.grid_points));
  std::vector<IdsPoint> curve;
  for (double e : grid) curve.push_back({e, ids(spec, e)});
  ArtifactWriter aw(c.out);
  std::ostringstream ev, ic, mtx;
  write_eigenvalues_csv(ev, spec);
  write_ids_csv(ic, curve);
  write_matrix_market(mtx, op);
  aw.write("eigenvalues.csv", ev.str());
  aw.write("ids.csv", ic.str());
  aw.write("operator.mtx", mtx.str());
  aw.write_manifest("spectrum", c);
  if (!quiet)
    out << "q " << spec.size() << "  solver " << spec.solver << "  E in [" << format_real(spec.eigenvalues.front())
        << ", " << format_real(spec.eigenvalues.back()) << "]\n";
  return 0;
}

inline std::vector<Gap> persistent_gaps(const VerifyConfig& v) {
  auto sizes = detail::checked_sizes(v.sizes);
  std::vector<SpectralData> spectra(2);
  parallel_for(2, v.threads, [&](std::size_t i) {
    spectra[i] = eigenvalues(system_operator(v.system, sizes[sizes.size() - 2 + i]), v.dense_limit);
  });
  return detect_gaps(spectra[0], spectra[1], v.gap_factor);
}

inline int gaps(const RunConfig& c, std::ostream& out, bool quiet) {
  const VerifyConfig v = make_verify_config(c);
  const auto found = persistent_gaps(v);
  std::ostringstream csv;
  csv << "E_lo,E_hi,width,ids_num,ids_den,coarse_ids_num,coarse_ids_den\n";
  for (const auto& g : found)
    csv << format_real(g.lower) << ',' << format_real(g.upper) << ',' << format_real(g.width()) << ',' << g.ids.num
        << ',' << g.ids.den << ',' << g.coarse_ids->num << ',' << g.coarse_ids->den << '\n';
  ArtifactWriter aw(c.out);
  aw.write("gaps.csv", csv.str());
  aw.write_manifest("gaps", c);
  if (!quiet) out << found.size() << " persistent gaps\n";
  return 0;
}

inline int label(const RunConfig& c, std::ostream& out, bool quiet) {
  const VerifyConfig v = make_verify_config(c);
  const ModuleScan scan = system_module(v.system, v.depth, 1e-10, v.coeff_bound);
  struct Item { std::string text; double x; double tol; std::optional<Rational> exact; };
  std::vector<Item> items;
  if (!c.values.empty()) {
    for (const auto& s : c.values) {
      const auto val = parse_value(s);
      if (const auto* r = std::get_if<Rational>(&val))
        items.push_back({s, r->value(), v.tol_scale / static_cast<double>(r->den), *r});
      else
        items.push_back({s, std::get<double>(val), v.tol_scale / static_cast<double>(v.sizes.back()), std::nullopt});
    }
  } else {
    for (const auto& g : persistent_gaps(v)) {
      const std::string t = std::to_string(g.ids.num) + "/" + std::to_string(g.ids.den);
      items.push_back({t, g.ids.value(), v.tol_scale / static_cast<double>(g.ids.den), g.ids});
    }
  }
  std::ostringstream csv;
  csv << "value,coeffs,residual,labelled,tolerance\n";
  std::size_t labelled = 0;
  for (const auto& it : items) {
    const auto m = membership(it.x, scan.module, it.tol, v.coeff_bound);
    const Membership shown = m ? *m : nearest_element(it.x, scan.module, v.coeff_bound);
    std::string coeffs;
    for (std::size_t k = 0; k < shown.coefficients.size(); ++k)
      coeffs += (k ? ";" : "") + std::to_string(shown.coefficients[k]);
    csv << it.text << ',' << coeffs << ',' << format_real(shown.residual) << ',' << (m ? "true" : "false") << ','
        << format_real(it.tol) << '\n';
    labelled += m ? 1 : 0;
  }
  nlohmann::json mj = to_json(scan.module);
  mj["stabilization_depth"] = scan.stabilization_depth;
  mj["stabilized"] = scan.stabilized;
  ArtifactWriter aw(c.out);
  aw.write("module.json", mj.dump(2) + "\n");
  aw.write("labels.csv", csv.str());
  aw.write_manifest("label", c);
  if (!quiet) {
    out << "module basis:";
    for (double b : scan.module.basis) out << ' ' << format_real(b);
    out << "\nlabelled " << labelled << " of " << items.size() << '\n';
  }
  return 0;
}

inline int emit_report(const char* command, const RunConfig& c, const VerificationReport& r, std::ostream& out,
                       bool quiet) {
  ArtifactWriter aw(c.out);
  aw.write("report.json", to_json(r).dump(2) + "\n");
  aw.write_manifest(command, c);
  if (!quiet) print_table(out, r);
  return exit_code(r.verdict);
}

inline int verify(const RunConfig& c, std::ostream& out, bool quiet) {
  return emit_report("verify", c, verify_conjecture(make_verify_config(c)), out, quiet);
}

inline int verify2d(const RunConfig& c, std::ostream& out, bool quiet) {
  return emit_report("verify2d", c, verify_2d(make_verify2d_config(c)), out, quiet);
}

inline int control(const RunConfig& c, std::ostream& out, bool quiet) {
  check_common(c);
  const std::string pattern = c.raw.count("pattern") ? c.x.pattern : std::string{};
  if (!pattern.empty() && pattern.size() != c.period)
    throw ConfigError("config: pattern length must equal period");
  if (pattern.find_first_not_of("AB") != std::string::npos)
    throw ConfigError("config: pattern must be a string over A and B");
  return emit_report("control", c, bloch_control(c.period, pattern, c.x.lambda.value_or(1.0), resolve_threads(c.threads)),
                     out, quiet);
}

}  // namespace cmd

/// Exit codes: 0 pass or success, 1 failed verification or runtime error,
/// 2 usage or configuration error, 3 inconclusive verification.
inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"gap labelling checks for cut-and-project quasicrystals", "gaplab"};
  app.require_subcommand(1);
  app.fallthrough();
  CliOptions opt;
  app.add_option("--config", opt.config_path, "config file (key = value, or JSON)");
  app.add_option("--out", opt.out_dir, "output directory (overrides the config's out)");
  app.add_option("--threads", opt.threads, "worker threads; falls back to GAPLAB_THREADS")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet,-q", opt.quiet, "no table or summary on stdout");
  app.add_option("--set", opt.sets, "override a config key, KEY=VALUE (repeatable)");

  using Handler = int (*)(const RunConfig&, std::ostream&, bool);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
      {"generate", "write a word and its point set", cmd::generate},
      {"spectrum", "eigenvalues, IDS curve and operator listing at one size", cmd::spectrum},
      {"gaps", "persistent gaps between the two largest sizes", cmd::gaps},
      {"label", "label module and labels for values or detected gaps", cmd::label},
      {"verify", "full gap-labelling verification with report", cmd::verify},
      {"verify2d", "verification for a separable Z^2 product", cmd::verify2d},
      {"control", "periodic Bloch control", cmd::control},
  };
  std::map<std::string, Handler> handlers;
  for (const auto& [name, help, fn] : commands) {
    app.add_subcommand(name, help);
    handlers[name] = fn;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const RunConfig c = load_run_config(opt);
    return handlers.at(name)(c, out, opt.quiet);
  } catch (const ConfigError& e) {
    err << "gaplab " << name << ": " << e.what() << '\n';
    return 2;
  } catch (const DegenerateScheme& e) {
    err << "gaplab " << name << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "gaplab " << name << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gaplab
