#include "floquet/report.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

void to_json(ojson& j, const ModeClassEntry& v) {
  j = ojson{{"k", v.k}, {"norm", v.norm}, {"bound", v.bound}, {"ratio", v.ratio}};
}

void from_json(const ojson& j, ModeClassEntry& v) {
  j.at("k").get_to(v.k);
  j.at("norm").get_to(v.norm);
  j.at("bound").get_to(v.bound);
  j.at("ratio").get_to(v.ratio);
}

void to_json(ojson& j, const ClassReport& v) {
  j = ojson{{"modes", v.modes},
            {"max_ratio", v.max_ratio},
            {"min_admissible_c_v", v.min_admissible_c_v},
            {"grid_points", v.grid_points},
            {"pass", v.pass}};
}

void from_json(const ojson& j, ClassReport& v) {
  j.at("modes").get_to(v.modes);
  j.at("max_ratio").get_to(v.max_ratio);
  j.at("min_admissible_c_v").get_to(v.min_admissible_c_v);
  j.at("grid_points").get_to(v.grid_points);
  j.at("pass").get_to(v.pass);
}

void to_json(ojson& j, const DecayBound& v) {
  j = ojson{{"c", v.c}, {"b", v.b}, {"p", v.p}, {"q", v.q}, {"r", v.r}};
}

void from_json(const ojson& j, DecayBound& v) {
  j.at("c").get_to(v.c);
  j.at("b").get_to(v.b);
  j.at("p").get_to(v.p);
  j.at("q").get_to(v.q);
  j.at("r").get_to(v.r);
}

void to_json(ojson& j, const BoundCheckReport& v) {
  j = ojson{{"bound", v.bound},
            {"c_min", v.c_min},
            {"max_ratio", v.max_ratio},
            {"worst_j", v.worst_j},
            {"worst_k", v.worst_k},
            {"cells", v.cells},
            {"used", v.used},
            {"row_slope", v.row_slope},
            {"diag_slope", v.diag_slope},
            {"rows_used", v.rows_used},
            {"diags_used", v.diags_used}};
}

void from_json(const ojson& j, BoundCheckReport& v) {
  j.at("bound").get_to(v.bound);
  j.at("c_min").get_to(v.c_min);
  j.at("max_ratio").get_to(v.max_ratio);
  j.at("worst_j").get_to(v.worst_j);
  j.at("worst_k").get_to(v.worst_k);
  j.at("cells").get_to(v.cells);
  j.at("used").get_to(v.used);
  j.at("row_slope").get_to(v.row_slope);
  j.at("diag_slope").get_to(v.diag_slope);
  j.at("rows_used").get_to(v.rows_used);
  j.at("diags_used").get_to(v.diags_used);
}

void to_json(ojson& j, const FitResult& v) {
  j = ojson{{"c_min", v.c_min},
            {"log_c", v.log_c},
            {"p", v.p},
            {"q", v.q},
            {"r", v.r},
            {"b", v.b},
            {"points", v.points},
            {"max_log_residual", v.max_log_residual}};
}

void from_json(const ojson& j, FitResult& v) {
  j.at("c_min").get_to(v.c_min);
  j.at("log_c").get_to(v.log_c);
  j.at("p").get_to(v.p);
  j.at("q").get_to(v.q);
  j.at("r").get_to(v.r);
  j.at("b").get_to(v.b);
  j.at("points").get_to(v.points);
  j.at("max_log_residual").get_to(v.max_log_residual);
}

void to_json(ojson& j, const LemmaReport& v) {
  j = ojson{{"id", v.id},
            {"range", v.range},
            {"max_ratio", v.max_ratio},
            {"witness_k0", v.witness_k0},
            {"witness_k", v.witness_k},
            {"witness_l", v.witness_l},
            {"pass", v.pass}};
}

void from_json(const ojson& j, LemmaReport& v) {
  j.at("id").get_to(v.id);
  j.at("range").get_to(v.range);
  j.at("max_ratio").get_to(v.max_ratio);
  j.at("witness_k0").get_to(v.witness_k0);
  j.at("witness_k").get_to(v.witness_k);
  j.at("witness_l").get_to(v.witness_l);
  j.at("pass").get_to(v.pass);
}

void to_json(ojson& j, const CnuResult& v) {
  j = ojson{{"nu", v.nu},
            {"beta", v.beta},
            {"range", v.range},
            {"value", v.value},
            {"value_doubled", v.value_doubled},
            {"drift", v.drift},
            {"stable", v.stable}};
}

void from_json(const ojson& j, CnuResult& v) {
  j.at("nu").get_to(v.nu);
  j.at("beta").get_to(v.beta);
  j.at("range").get_to(v.range);
  j.at("value").get_to(v.value);
  j.at("value_doubled").get_to(v.value_doubled);
  j.at("drift").get_to(v.drift);
  j.at("stable").get_to(v.stable);
}

void to_json(ojson& j, const RegionalFit& v) {
  j = ojson{{"region", v.region}, {"c", v.c}, {"sup", v.sup}, {"cells", v.cells}};
}

void from_json(const ojson& j, RegionalFit& v) {
  j.at("region").get_to(v.region);
  j.at("c").get_to(v.c);
  j.at("sup").get_to(v.sup);
  j.at("cells").get_to(v.cells);
}

void to_json(ojson& j, const DecomposeReport& v) {
  j = ojson{{"h", v.h},
            {"K", v.K},
            {"N", v.N},
            {"margin", v.margin},
            {"method", v.method},
            {"dt_requested", v.dt_requested},
            {"eta", v.eta},
            {"steps", v.steps},
            {"dt", v.dt},
            {"resonance_gap", v.resonance_gap},
            {"resonant", v.resonant},
            {"gauge_average", v.gauge_average},
            {"potential_class", v.potential_class},
            {"unitarity_defect", v.unitarity_defect},
            {"m1_identity_defect", v.m1_identity_defect},
            {"adjoint_gap", v.adjoint_gap},
            {"psi11_max_ratio", v.psi11_max_ratio},
            {"md_support_ok", v.md_support_ok},
            {"m2_interior_max", v.m2_interior_max},
            {"m2_bound", v.m2_bound},
            {"m2_fit", v.m2_fit},
            {"sms_interior_max", v.sms_interior_max},
            {"sms_bound", v.sms_bound},
            {"sms_fit", v.sms_fit},
            {"slopes_checked", v.slopes_checked},
            {"pass", v.pass},
            {"failures", v.failures}};
}

void from_json(const ojson& j, DecomposeReport& v) {
  j.at("h").get_to(v.h);
  j.at("K").get_to(v.K);
  j.at("N").get_to(v.N);
  j.at("margin").get_to(v.margin);
  j.at("method").get_to(v.method);
  j.at("dt_requested").get_to(v.dt_requested);
  j.at("eta").get_to(v.eta);
  j.at("steps").get_to(v.steps);
  j.at("dt").get_to(v.dt);
  j.at("resonance_gap").get_to(v.resonance_gap);
  j.at("resonant").get_to(v.resonant);
  j.at("gauge_average").get_to(v.gauge_average);
  j.at("potential_class").get_to(v.potential_class);
  j.at("unitarity_defect").get_to(v.unitarity_defect);
  j.at("m1_identity_defect").get_to(v.m1_identity_defect);
  j.at("adjoint_gap").get_to(v.adjoint_gap);
  j.at("psi11_max_ratio").get_to(v.psi11_max_ratio);
  j.at("md_support_ok").get_to(v.md_support_ok);
  j.at("m2_interior_max").get_to(v.m2_interior_max);
  j.at("m2_bound").get_to(v.m2_bound);
  j.at("m2_fit").get_to(v.m2_fit);
  j.at("sms_interior_max").get_to(v.sms_interior_max);
  j.at("sms_bound").get_to(v.sms_bound);
  j.at("sms_fit").get_to(v.sms_fit);
  j.at("slopes_checked").get_to(v.slopes_checked);
  j.at("pass").get_to(v.pass);
  j.at("failures").get_to(v.failures);
}

void to_json(ojson& j, const DiagonalizeReport& v) {
  j = ojson{{"h", v.h},
            {"K", v.K},
            {"N", v.N},
            {"method", v.method},
            {"steps", v.steps},
            {"dt", v.dt},
            {"sms_c", v.sms_c},
            {"c_alpha1", v.c_alpha1},
            {"monodromy_defect", v.monodromy_defect},
            {"conjugated_defect", v.conjugated_defect},
            {"route_gap", v.route_gap},
            {"herm_defect", v.herm_defect},
            {"envelope_ratio", v.envelope_ratio},
            {"envelope_ok", v.envelope_ok},
            {"eee_max", v.eee_max},
            {"lemma_eee_ok", v.lemma_eee_ok},
            {"tight_c", v.tight_c},
            {"eee_max_tight", v.eee_max_tight},
            {"lemma_eee_tight_ok", v.lemma_eee_tight_ok},
            {"orthonormality_defect", v.orthonormality_defect},
            {"max_lambda_ratio", v.max_lambda_ratio},
            {"max_sigma_ratio", v.max_sigma_ratio},
            {"max_sigma_prime", v.max_sigma_prime},
            {"max_eps_diag", v.max_eps_diag},
            {"wprime_c", v.wprime_c},
            {"diag_residual", v.diag_residual},
            {"modulus_defect", v.modulus_defect},
            {"clusters", v.clusters},
            {"embed_defect_gap", v.embed_defect_gap},
            {"middle_sup", v.middle_sup},
            {"fit_middle", v.fit_middle},
            {"fit_row_strip", v.fit_row_strip},
            {"fit_col_strip", v.fit_col_strip},
            {"fit_outer", v.fit_outer},
            {"pass", v.pass},
            {"failures", v.failures}};
}

void from_json(const ojson& j, DiagonalizeReport& v) {
  j.at("h").get_to(v.h);
  j.at("K").get_to(v.K);
  j.at("N").get_to(v.N);
  j.at("method").get_to(v.method);
  j.at("steps").get_to(v.steps);
  j.at("dt").get_to(v.dt);
  j.at("sms_c").get_to(v.sms_c);
  j.at("c_alpha1").get_to(v.c_alpha1);
  j.at("monodromy_defect").get_to(v.monodromy_defect);
  j.at("conjugated_defect").get_to(v.conjugated_defect);
  j.at("route_gap").get_to(v.route_gap);
  j.at("herm_defect").get_to(v.herm_defect);
  j.at("envelope_ratio").get_to(v.envelope_ratio);
  j.at("envelope_ok").get_to(v.envelope_ok);
  j.at("eee_max").get_to(v.eee_max);
  j.at("lemma_eee_ok").get_to(v.lemma_eee_ok);
  j.at("tight_c").get_to(v.tight_c);
  j.at("eee_max_tight").get_to(v.eee_max_tight);
  j.at("lemma_eee_tight_ok").get_to(v.lemma_eee_tight_ok);
  j.at("orthonormality_defect").get_to(v.orthonormality_defect);
  j.at("max_lambda_ratio").get_to(v.max_lambda_ratio);
  j.at("max_sigma_ratio").get_to(v.max_sigma_ratio);
  j.at("max_sigma_prime").get_to(v.max_sigma_prime);
  j.at("max_eps_diag").get_to(v.max_eps_diag);
  j.at("wprime_c").get_to(v.wprime_c);
  j.at("diag_residual").get_to(v.diag_residual);
  j.at("modulus_defect").get_to(v.modulus_defect);
  j.at("clusters").get_to(v.clusters);
  j.at("embed_defect_gap").get_to(v.embed_defect_gap);
  j.at("middle_sup").get_to(v.middle_sup);
  j.at("fit_middle").get_to(v.fit_middle);
  j.at("fit_row_strip").get_to(v.fit_row_strip);
  j.at("fit_col_strip").get_to(v.fit_col_strip);
  j.at("fit_outer").get_to(v.fit_outer);
  j.at("pass").get_to(v.pass);
  j.at("failures").get_to(v.failures);
}

void to_json(ojson& j, const LemmasReport& v) {
  j = ojson{{"range", v.range},
            {"ineq1", v.ineq1},
            {"ineq2", v.ineq2},
            {"cnu2", v.cnu2},
            {"cnu3", v.cnu3},
            {"pass", v.pass}};
}

void from_json(const ojson& j, LemmasReport& v) {
  j.at("range").get_to(v.range);
  j.at("ineq1").get_to(v.ineq1);
  j.at("ineq2").get_to(v.ineq2);
  j.at("cnu2").get_to(v.cnu2);
  j.at("cnu3").get_to(v.cnu3);
  j.at("pass").get_to(v.pass);
}

void to_json(ojson& j, const ConvergeReport& v) {
  j = ojson{{"Ks", v.Ks},
            {"deltas", v.deltas},
            {"final_delta", v.final_delta},
            {"monotone", v.monotone},
            {"pass", v.pass},
            {"runs", v.runs}};
}

void from_json(const ojson& j, ConvergeReport& v) {
  j.at("Ks").get_to(v.Ks);
  j.at("deltas").get_to(v.deltas);
  j.at("final_delta").get_to(v.final_delta);
  j.at("monotone").get_to(v.monotone);
  j.at("pass").get_to(v.pass);
  j.at("runs").get_to(v.runs);
}

void save_json(const std::string& path, const ojson& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_matrix_csv(const std::string& path, const OperatorMatrix& m,
                      const DecayBound& bound) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "j,k,re,im,bound,ratio\n";
  char line[192];
  for (int j = -m.K; j <= m.K; ++j) {
    for (int k = -m.K; k <= m.K; ++k) {
      Complex e = m.at(j, k);
      double env = bound.evaluate(j, k);
      double a = std::abs(e);
      double ratio;
      if (env > 0.0)
        ratio = a / env;
      else
        ratio = a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", j, k,
                    e.real(), e.imag(), env, ratio);
      out << line;
    }
  }
}

}  // namespace floquet
