#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "floquet/config.hpp"
#include "floquet/pipeline.hpp"
#include "floquet/report.hpp"

namespace {

void emit(const floquet::ojson& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    floquet::save_json(out_path, j);
}

void warn_if_resonant(const floquet::DecomposeReport& rep) {
  if (rep.resonant)
    std::cerr << "warning: free phases nearly collide (gap "
              << rep.resonance_gap << "); the first-order part degenerates\n";
}

int finish(bool pass, const std::vector<std::string>& failures) {
  if (pass) return 0;
  for (const auto& f : failures) std::cerr << "failed: " << f << '\n';
  return 1;
}

int cmd_decompose(const std::string& config_path, const std::string& out_path,
                  const std::string& csv_path) {
  floquet::RunConfig cfg = floquet::load_config(config_path);
  floquet::DecomposeArtifacts art;
  floquet::DecomposeReport rep = floquet::run_decompose(cfg, &art);
  warn_if_resonant(rep);
  emit(rep, out_path);
  if (!csv_path.empty()) {
    floquet::DecayBound b = rep.m2_bound.bound;
    b.c = rep.m2_bound.c_min;
    floquet::write_matrix_csv(csv_path, art.parts->m2, b);
  }
  return finish(rep.pass, rep.failures);
}

int cmd_diagonalize(const std::string& config_path, const std::string& out_path) {
  floquet::RunConfig cfg = floquet::load_config(config_path);
  floquet::DiagonalizeReport rep = floquet::run_diagonalize(cfg);
  emit(rep, out_path);
  return finish(rep.pass, rep.failures);
}

int cmd_lemmas(int range, const std::string& out_path) {
  floquet::LemmasReport rep = floquet::run_lemmas(range);
  emit(rep, out_path);
  std::vector<std::string> failures;
  if (!rep.ineq1.pass) failures.push_back(rep.ineq1.id);
  if (!rep.ineq2.pass) failures.push_back(rep.ineq2.id);
  if (!rep.cnu2.stable) failures.push_back("convolution constant nu=2 unstable");
  if (!rep.cnu3.stable) failures.push_back("convolution constant nu=3 unstable");
  return finish(rep.pass, failures);
}

int cmd_converge(const std::string& config_path, const std::vector<int>& Ks,
                 const std::string& out_path) {
  floquet::RunConfig cfg = floquet::load_config(config_path);
  floquet::ConvergeReport rep = floquet::run_converge(cfg, Ks);
  emit(rep, out_path);
  std::vector<std::string> failures;
  if (!rep.pass)
    failures.push_back("final interior delta " + std::to_string(rep.final_delta) +
                       " > 1e-6");
  return finish(rep.pass, failures);
}

}  // namespace

int main(int argc, char** argv) {
  floquet::apply_thread_cap();

  CLI::App app{"Monodromy toolkit for the periodically driven Schrodinger equation"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  int range = 8;
  std::vector<int> Ks;

  auto* dec = app.add_subcommand(
      "decompose", "Compute the monodromy and its near-diagonal splitting");
  dec->add_option("--config", config_path, "Run configuration (JSON)")->required();
  dec->add_option("--out", out_path, "Report JSON path (default: stdout)");
  dec->add_option("--csv", csv_path, "Residual entry dump (j,k,re,im,bound,ratio)");

  auto* dia = app.add_subcommand(
      "diagonalize", "Conjugate the monodromy to block-diagonal form");
  dia->add_option("--config", config_path, "Run configuration (JSON)")->required();
  dia->add_option("--out", out_path, "Report JSON path (default: stdout)");

  auto* lem = app.add_subcommand("lemmas", "Scan the elementary index inequalities");
  lem->add_option("--range", range, "Index scan radius (>= 2)")->required();
  lem->add_option("--out", out_path, "Report JSON path (default: stdout)");

  auto* con = app.add_subcommand(
      "converge", "Compare interior monodromy blocks across truncations");
  con->add_option("--config", config_path, "Run configuration (JSON)")->required();
  con->add_option("--K", Ks, "Ascending truncation sizes")
      ->required()
      ->delimiter(',');
  con->add_option("--out", out_path, "Report JSON path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) return cmd_decompose(config_path, out_path, csv_path);
    if (dia->parsed()) return cmd_diagonalize(config_path, out_path);
    if (lem->parsed()) return cmd_lemmas(range, out_path);
    if (con->parsed()) return cmd_converge(config_path, Ks, out_path);
  } catch (const floquet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const floquet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
