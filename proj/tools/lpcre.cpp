// lpcre: command-line front end. Subcommands: catalog, classify, spectrum,
// cre-find, verify, simulate, figure-data. All artifacts carry a meta block
// (tool version, rng seed, echoed config) and are written atomically; outputs
// are byte-stable for a fixed config and seed.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liepoisson/artifacts.hpp"
#include "liepoisson/json_io.hpp"
#include "liepoisson/liepoisson.hpp"

namespace {

using nlohmann::json;
using namespace lp;

bool verbose_logging() {
  const char* v = std::getenv("LPCRE_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log_line(const std::string& msg) {
  if (verbose_logging()) std::cerr << "[lpcre] " << msg << "\n";
}

Vec parse_vec(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ParseError("cannot parse '" + cell + "' as a number");
    }
  }
  if (out.empty()) throw ParseError("empty vector literal");
  return out;
}

std::vector<double> parse_levels(const std::string& text) { return parse_vec(text); }

void emit(const std::string& out_path, const json& payload) {
  std::string text = payload.dump(2);
  text += '\n';
  if (out_path.empty())
    std::cout << text;
  else
    io::atomic_write(out_path, text);
}

/// Job-file support: option values come from (1) the command line, else
/// (2) the --job JSON, else (3) the built-in default.
struct JobFile {
  json data = json::object();

  void load(const std::string& path) {
    data = io::load_json_file(path);
    if (!data.is_object()) throw SchemaError("job file must hold a JSON object");
  }
  template <typename T>
  void fill(const CLI::Option* opt, const std::string& key, T& value) const {
    if (opt->count() > 0) return;
    if (data.contains(key)) value = data.at(key).get<T>();
  }
};

struct AlgebraSource {
  std::string file;
  std::string type_name;
  double h = 0.0;

  algebra::StructureConstants resolve() const {
    if (!file.empty() && !type_name.empty())
      throw SchemaError("give either --algebra or --type, not both");
    if (!file.empty()) return io::algebra_from_json(io::load_json_file(file));
    if (!type_name.empty()) return bianchi::catalog(bianchi::type_from_name(type_name, h)).constants;
    throw SchemaError("an algebra is required (--algebra FILE or --type NAME)");
  }

  std::optional<bianchi::BianchiType> declared_type() const {
    if (type_name.empty()) return std::nullopt;
    return bianchi::type_from_name(type_name, h);
  }
};

json config_echo(std::initializer_list<std::pair<std::string, json>> kv) {
  json c = json::object();
  for (const auto& [k, v] : kv) c[k] = v;
  return c;
}

int cmd_catalog(double h_vi, double h_vii_small, double h_vii_large, const std::string& out) {
  json rows = json::array();
  for (const auto& t : bianchi::table_rows(h_vi, h_vii_small, h_vii_large))
    rows.push_back(io::catalog_entry_to_json(bianchi::catalog(t)));
  json payload{{"meta", io::meta_block("catalog", kDefaultSeed,
                                       config_echo({{"h_vi", h_vi},
                                                    {"h_vii_small", h_vii_small},
                                                    {"h_vii_large", h_vii_large}}))},
               {"rows", rows}};
  emit(out, payload);
  return 0;
}

int cmd_classify(const AlgebraSource& src, const std::string& out) {
  auto alg = src.resolve();
  auto type = bianchi::classify(alg);
  json payload{{"meta", io::meta_block("classify", kDefaultSeed, json::object())},
               {"result", io::type_to_json(type)}};
  emit(out, payload);
  return 0;
}

int cmd_spectrum(const AlgebraSource& src, const std::string& zeta_text, const std::string& op,
                 const std::string& out) {
  auto alg = src.resolve();
  Vec zeta = parse_vec(zeta_text);
  if (static_cast<int>(zeta.size()) != alg.dim())
    throw SchemaError("zeta length must match the algebra dimension");
  Mat m = (op == "coadjoint") ? algebra::coadjoint_matrix(alg, zeta)
                              : algebra::adjoint_matrix(alg, zeta);
  auto rep = algebra::spectrum(m);
  json payload{{"meta", io::meta_block("spectrum", kDefaultSeed,
                                       config_echo({{"zeta", zeta}, {"operator", op}}))},
               {"result", io::spectrum_to_json(rep)}};
  emit(out, payload);
  return 0;
}

int cmd_cre_find(const AlgebraSource& src, const std::string& ham_file, int seeds, double tol,
                 bool include_trivial, std::uint64_t rng_seed, const std::string& out,
                 const std::string& csv_out) {
  auto alg = src.resolve();
  auto ham = io::hamiltonian_from_json(io::load_json_file(ham_file));
  if (ham.dim() != alg.dim()) throw SchemaError("hamiltonian dimension must match the algebra");
  if (!(tol > 0.0)) throw SchemaError("--tol must be positive");
  if (seeds < 1) throw SchemaError("--seeds must be positive");

  cre::SearchConfig config;
  config.seeds = seeds;
  config.certify_tol = tol;
  config.include_trivial = include_trivial;
  config.rng_seed = rng_seed;
  auto p = poisson::PoissonStructure::lie_poisson(alg);
  auto action = poisson::ScalingAction::standard(alg.dim());
  log_line("cre-find: " + std::to_string(seeds) + " seeds");
  auto result = cre::find_cre(p, ham, action, config);

  json solutions = json::array();
  for (const auto& s : result.solutions) solutions.push_back(io::cre_to_json(s));
  json meta = io::meta_block("cre-find", rng_seed,
                             config_echo({{"seeds", seeds},
                                          {"tol", tol},
                                          {"include_trivial", include_trivial},
                                          {"hamiltonian", ham_file}}));
  json payload{{"meta", meta},
               {"results", solutions},
               {"seeds_converged", result.seeds_converged},
               {"continuum_suspected", result.continuum_suspected}};
  emit(out, payload);

  if (!csv_out.empty()) {
    io::CsvWriter csv;
    csv.meta(meta);
    std::vector<std::string> cols;
    for (int i = 1; i <= alg.dim(); ++i) cols.push_back("x" + std::to_string(i));
    cols.push_back("xi");
    cols.push_back("residual");
    cols.push_back("trivial");
    csv.header(cols);
    for (const auto& s : result.solutions) {
      std::vector<std::string> cells;
      for (double v : s.x) cells.push_back(io::format_double(v));
      cells.push_back(io::format_double(s.xi));
      cells.push_back(io::format_double(s.residual));
      cells.push_back(s.trivial ? "true" : "false");
      csv.row(cells);
    }
    io::atomic_write(csv_out, csv.out);
  }
  return 0;
}

int cmd_verify(const AlgebraSource& src, const std::string& ham_file, int samples,
               std::uint64_t rng_seed, const std::string& out) {
  auto alg = src.resolve();
  auto p = poisson::PoissonStructure::lie_poisson(alg);
  auto action = poisson::ScalingAction::standard(alg.dim());

  std::vector<poisson::CheckReport> reports;
  reports.push_back({"jacobi", alg.jacobi_residual(), "analytic", 0});

  {
    auto pts = poisson::sample_points(alg.dim(), samples, rng_seed);
    double res = 0.0;
    for (const auto& x : pts) {
      Mat pi = p.eval(x);
      res = std::max(res, max_abs(pi + transpose(pi)));
    }
    reports.push_back({"antisymmetry", res, "analytic", samples});
  }
  {
    auto pts = poisson::sample_points(alg.dim(), samples, rng_seed + 1);
    double res = 0.0;
    for (const auto& x : pts)
      for (double t : {-2.0, 0.5, 3.0})
        res = std::max(res, max_abs(p.eval(t * x) - t * p.eval(x)));
    reports.push_back({"homogeneity_degree_1", res, "analytic", samples});
  }
  reports.push_back(poisson::check_exactness(p, action, samples, rng_seed + 2));
  reports.push_back(
      poisson::check_conformal_poisson(p, action, 1.0, samples, {0.5, 2.0, 10.0}, rng_seed + 3));

  std::optional<bianchi::BianchiType> type = src.declared_type();
  if (!type && alg.dim() == 3) {
    try {
      type = bianchi::classify(alg);
    } catch (const Error&) {
      // Non-catalog basis: skip Casimir checks.
    }
  }
  if (type)
    for (const auto& c : bianchi::catalog(*type).casimirs)
      reports.push_back(poisson::casimir_report(p, c, samples, rng_seed + 4));

  if (!ham_file.empty()) {
    auto ham = io::hamiltonian_from_json(io::load_json_file(ham_file));
    reports.push_back(poisson::check_field_conformal(p, ham, action, 1.0, ham.degree,
                                                     {0.5, 2.0, 10.0}, samples, rng_seed + 5));
  }

  json checks = json::array();
  for (const auto& r : reports) checks.push_back(io::check_report_to_json(r));
  json payload{{"meta", io::meta_block("verify", rng_seed, config_echo({{"samples", samples}}))},
               {"checks", checks}};
  emit(out, payload);
  return 0;
}

int cmd_simulate(const AlgebraSource& src, const std::string& ham_file, const std::string& x0_text,
                 double t_end, double dt, const std::string& out) {
  auto alg = src.resolve();
  auto ham = io::hamiltonian_from_json(io::load_json_file(ham_file));
  Vec x0 = parse_vec(x0_text);
  if (static_cast<int>(x0.size()) != alg.dim() || ham.dim() != alg.dim())
    throw SchemaError("x0 and hamiltonian dimensions must match the algebra");

  auto p = poisson::PoissonStructure::lie_poisson(alg);
  auto traj = dynamics::integrate(p, ham, x0, t_end, dt);

  // Casimir columns: catalog Casimirs whose domain contains the whole path.
  std::vector<poisson::ScalarField> casimirs;
  std::optional<bianchi::BianchiType> type = src.declared_type();
  if (!type && alg.dim() == 3) {
    try {
      type = bianchi::classify(alg);
    } catch (const Error&) {
    }
  }
  if (type)
    for (const auto& c : bianchi::catalog(*type).casimirs) {
      bool ok = true;
      for (const auto& x : traj.states)
        if (!c.in_domain(x)) {
          ok = false;
          break;
        }
      if (ok) casimirs.push_back(c);
    }

  json meta = io::meta_block(
      "simulate", kDefaultSeed,
      config_echo({{"t_end", t_end}, {"dt", dt}, {"x0", x0}, {"escaped", traj.escaped}}));
  io::CsvWriter csv;
  csv.meta(meta);
  std::vector<std::string> cols{"t"};
  for (int i = 1; i <= alg.dim(); ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("H");
  for (std::size_t k = 0; k < casimirs.size(); ++k)
    cols.push_back("C" + std::to_string(k + 1) + "=" + casimirs[k].name);
  csv.header(cols);
  for (std::size_t row = 0; row < traj.times.size(); ++row) {
    std::vector<double> vals{traj.times[row]};
    for (double v : traj.states[row]) vals.push_back(v);
    vals.push_back(ham.value(traj.states[row]));
    for (const auto& c : casimirs) vals.push_back(c(traj.states[row]));
    csv.numeric_row(vals);
  }
  if (out.empty())
    std::cout << csv.out;
  else
    io::atomic_write(out, csv.out);
  return 0;
}

int cmd_figure_data(const std::string& example, double alpha, double beta, double gamma,
                    const std::string& levels_text, const std::string& out) {
  std::vector<double> levels;
  if (!levels_text.empty()) levels = parse_levels(levels_text);

  figures::FigureData fig;
  if (example == "so3") {
    if (levels_text.empty()) levels = {2.0 / beta};
    fig = figures::so3_figure(alpha, beta, gamma, levels);
  } else if (example == "so21") {
    if (levels_text.empty()) levels = {1.0, -1.0, 3.0, -3.0};
    fig = figures::so21_figure(alpha, beta, gamma, levels);
  } else {
    throw SchemaError("--example must be so3 or so21");
  }
  json payload{{"meta", io::meta_block("figure-data", kDefaultSeed,
                                       config_echo({{"example", example},
                                                    {"alpha", alpha},
                                                    {"beta", beta},
                                                    {"gamma", gamma},
                                                    {"levels", levels}}))},
               {"figure", io::figure_to_json(fig)}};
  emit(out, payload);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal relative equilibria on Lie-Poisson structures"};
  app.require_subcommand(1);

  JobFile job;
  std::string job_path;
  app.add_option("--job", job_path, "JSON job file; command-line flags override its keys");

  // catalog
  auto* sc_catalog = app.add_subcommand("catalog", "Dump the Bianchi catalog rows as JSON");
  double h_vi = 2.0, h_vii_small = 0.5, h_vii_large = 3.0;
  std::string catalog_out;
  auto* o_hvi = sc_catalog->add_option("--h-vi", h_vi, "parameter for the VI_h row");
  auto* o_hvs = sc_catalog->add_option("--h-vii-small", h_vii_small, "VII_h row with 0<|h|<2");
  auto* o_hvl = sc_catalog->add_option("--h-vii-large", h_vii_large, "VII_h row with |h|>=2");
  auto* o_cout = sc_catalog->add_option("--out", catalog_out, "output path (default stdout)");

  auto add_algebra_opts = [](CLI::App* sc, AlgebraSource& src) {
    sc->set_help_flag("--help", "print help");  // frees -h / --h for the parameter
    sc->add_option("--algebra", src.file, "algebra JSON file");
    sc->add_option("--type", src.type_name, "catalog type name (I..IX, VI_-1, VI_h, VII_0, VII_h)");
    sc->add_option("--h", src.h, "parameter for VI_h / VII_h");
  };

  // classify
  auto* sc_classify = app.add_subcommand("classify", "Classify a dim-3 algebra in EM-adapted form");
  AlgebraSource classify_src;
  std::string classify_out;
  add_algebra_opts(sc_classify, classify_src);
  sc_classify->add_option("--out", classify_out, "output path");

  // spectrum
  auto* sc_spectrum = app.add_subcommand("spectrum", "Eigenvalues of an adjoint/coadjoint operator");
  AlgebraSource spectrum_src;
  std::string zeta_text, spectrum_op = "adjoint", spectrum_out;
  add_algebra_opts(sc_spectrum, spectrum_src);
  sc_spectrum->add_option("--zeta", zeta_text, "element, comma separated")->required();
  sc_spectrum->add_option("--operator", spectrum_op, "adjoint (default) or coadjoint")
      ->check(CLI::IsMember({"adjoint", "coadjoint"}));
  sc_spectrum->add_option("--out", spectrum_out, "output path");

  // cre-find
  auto* sc_cre = app.add_subcommand("cre-find", "Multi-start Newton search for CREs");
  AlgebraSource cre_src;
  std::string cre_ham, cre_out, cre_csv;
  int cre_seeds = 512;
  double cre_tol = 1e-10;
  bool cre_trivial = false;
  std::uint64_t cre_seed = kDefaultSeed;
  add_algebra_opts(sc_cre, cre_src);
  auto* o_ham = sc_cre->add_option("--hamiltonian", cre_ham, "hamiltonian JSON file");
  auto* o_seeds = sc_cre->add_option("--seeds", cre_seeds, "Newton seed count");
  auto* o_tol = sc_cre->add_option("--tol", cre_tol, "certification tolerance");
  auto* o_triv = sc_cre->add_flag("--include-trivial", cre_trivial, "keep solutions with xi ~ 0");
  auto* o_rseed = sc_cre->add_option("--rng-seed", cre_seed, "RNG seed");
  sc_cre->add_option("--out", cre_out, "JSON output path");
  sc_cre->add_option("--csv", cre_csv, "CSV mirror path");

  // verify
  auto* sc_verify = app.add_subcommand("verify", "Run the structural verification suite");
  AlgebraSource verify_src;
  std::string verify_ham, verify_out;
  int verify_samples = 200;
  std::uint64_t verify_seed = kDefaultSeed;
  add_algebra_opts(sc_verify, verify_src);
  auto* o_vham = sc_verify->add_option("--hamiltonian", verify_ham, "optional hamiltonian JSON file");
  auto* o_vsam = sc_verify->add_option("--samples", verify_samples, "sample count per check");
  auto* o_vseed = sc_verify->add_option("--rng-seed", verify_seed, "RNG seed");
  sc_verify->add_option("--out", verify_out, "output path");

  // simulate
  auto* sc_sim = app.add_subcommand("simulate", "Integrate a trajectory, CSV output");
  AlgebraSource sim_src;
  std::string sim_ham, sim_x0, sim_out;
  double sim_tend = 10.0, sim_dt = 1e-3;
  add_algebra_opts(sc_sim, sim_src);
  auto* o_sham = sc_sim->add_option("--hamiltonian", sim_ham, "hamiltonian JSON file");
  auto* o_sx0 = sc_sim->add_option("--x0", sim_x0, "initial state, comma separated");
  auto* o_ste = sc_sim->add_option("--t-end", sim_tend, "final time");
  auto* o_sdt = sc_sim->add_option("--dt", sim_dt, "step size");
  sc_sim->add_option("--out", sim_out, "CSV output path");

  // figure-data
  auto* sc_fig = app.add_subcommand("figure-data", "Mesh/curve/point datasets for the figures");
  std::string fig_example, fig_levels, fig_out;
  double fig_alpha = 1.0, fig_beta = 2.0, fig_gamma = 3.0;
  sc_fig->add_option("--example", fig_example, "so3 or so21")->required();
  sc_fig->add_option("--alpha", fig_alpha, "H coefficient alpha");
  sc_fig->add_option("--beta", fig_beta, "H coefficient beta");
  sc_fig->add_option("--gamma", fig_gamma, "H coefficient gamma");
  sc_fig->add_option("--levels", fig_levels, "Casimir levels, comma separated");
  sc_fig->add_option("--out", fig_out, "output path");

  try {
    app.parse(argc, argv);
    if (!job_path.empty()) job.load(job_path);

    if (sc_catalog->parsed()) {
      job.fill(o_hvi, "h_vi", h_vi);
      job.fill(o_hvs, "h_vii_small", h_vii_small);
      job.fill(o_hvl, "h_vii_large", h_vii_large);
      job.fill(o_cout, "out", catalog_out);
      return cmd_catalog(h_vi, h_vii_small, h_vii_large, catalog_out);
    }
    if (sc_classify->parsed()) return cmd_classify(classify_src, classify_out);
    if (sc_spectrum->parsed())
      return cmd_spectrum(spectrum_src, zeta_text, spectrum_op, spectrum_out);
    if (sc_cre->parsed()) {
      job.fill(o_ham, "hamiltonian", cre_ham);
      job.fill(o_seeds, "seeds", cre_seeds);
      job.fill(o_tol, "tol", cre_tol);
      job.fill(o_rseed, "rng_seed", cre_seed);
      if (o_triv->count() == 0 && job.data.contains("include_trivial"))
        cre_trivial = job.data["include_trivial"].get<bool>();
      if (cre_ham.empty()) throw SchemaError("cre-find needs --hamiltonian");
      return cmd_cre_find(cre_src, cre_ham, cre_seeds, cre_tol, cre_trivial, cre_seed, cre_out,
                          cre_csv);
    }
    if (sc_verify->parsed()) {
      job.fill(o_vham, "hamiltonian", verify_ham);
      job.fill(o_vsam, "samples", verify_samples);
      job.fill(o_vseed, "rng_seed", verify_seed);
      return cmd_verify(verify_src, verify_ham, verify_samples, verify_seed, verify_out);
    }
    if (sc_sim->parsed()) {
      job.fill(o_sham, "hamiltonian", sim_ham);
      job.fill(o_sx0, "x0", sim_x0);
      job.fill(o_ste, "t_end", sim_tend);
      job.fill(o_sdt, "dt", sim_dt);
      if (sim_ham.empty() || sim_x0.empty())
        throw SchemaError("simulate needs --hamiltonian and --x0");
      return cmd_simulate(sim_src, sim_ham, sim_x0, sim_tend, sim_dt, sim_out);
    }
    if (sc_fig->parsed())
      return cmd_figure_data(fig_example, fig_alpha, fig_beta, fig_gamma, fig_levels, fig_out);
    throw SchemaError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err{{"error", {{"code", "ParseError"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const Error& e) {
    json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
