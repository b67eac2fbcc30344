#pragma once

#include <string>

#include "json.hpp"

#include "floquet/blockdiag.hpp"
#include "floquet/bounds.hpp"
#include "floquet/decay_bound.hpp"
#include "floquet/decomposition.hpp"
#include "floquet/pipeline.hpp"
#include "floquet/potential.hpp"

namespace floquet {

// All reports serialize to ordered JSON so two runs of the same build produce
// byte-identical files. Every to_json has a from_json inverse; round-tripping
// a report loses nothing (doubles are stored natively, not as text).
using ojson = nlohmann::ordered_json;

void to_json(ojson& j, const ModeClassEntry& v);
void from_json(const ojson& j, ModeClassEntry& v);

void to_json(ojson& j, const ClassReport& v);
void from_json(const ojson& j, ClassReport& v);

void to_json(ojson& j, const DecayBound& v);
void from_json(const ojson& j, DecayBound& v);

void to_json(ojson& j, const BoundCheckReport& v);
void from_json(const ojson& j, BoundCheckReport& v);

void to_json(ojson& j, const FitResult& v);
void from_json(const ojson& j, FitResult& v);

void to_json(ojson& j, const LemmaReport& v);
void from_json(const ojson& j, LemmaReport& v);

void to_json(ojson& j, const CnuResult& v);
void from_json(const ojson& j, CnuResult& v);

void to_json(ojson& j, const RegionalFit& v);
void from_json(const ojson& j, RegionalFit& v);

void to_json(ojson& j, const DecomposeReport& v);
void from_json(const ojson& j, DecomposeReport& v);

void to_json(ojson& j, const DiagonalizeReport& v);
void from_json(const ojson& j, DiagonalizeReport& v);

void to_json(ojson& j, const LemmasReport& v);
void from_json(const ojson& j, LemmasReport& v);

void to_json(ojson& j, const ConvergeReport& v);
void from_json(const ojson& j, ConvergeReport& v);

// Two-space indented dump with a trailing newline.
void save_json(const std::string& path, const ojson& j);

// Full-grid dump of a matrix against a decay template, one row per entry:
//   j,k,re,im,bound,ratio
// with numbers printed at %.17g so the file round-trips to the same doubles.
void write_matrix_csv(const std::string& path, const OperatorMatrix& m,
                      const DecayBound& bound);

}  // namespace floquet
