#pragma once

// File formats: group elements and grids as JSON (exact double round
// trip via shortest-representation formatting), paths as CSV with a
// "t,x1,...,xd" header, reports as tidy CSV plus JSON summaries.  CSV
// bodies are deterministic: identical inputs produce identical bytes.

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "rplab/davie_recursion.hpp"
#include "rplab/geodesic.hpp"
#include "rplab/rate.hpp"
#include "rplab/tail.hpp"
#include "rplab/vector_field.hpp"

namespace rplab {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

nlohmann::json to_json(const GroupElement& g);
GroupElement group_element_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RoughPathGrid& grid, const std::string& skeleton_ref = "");
RoughPathGrid grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CCBounds& bounds, const std::string& path_ref);

/// Field families from JSON: {"kind": "linear_affine" | "polynomial" |
/// "registry", ...}; matrices row-major.
VectorFieldFamily field_family_from_json(const nlohmann::json& j);

void write_path_csv(std::ostream& os, const PiecewiseLinearPath& path);
PiecewiseLinearPath read_path_csv(std::istream& is);

// report CSV bodies (one file each) and tidy plot data
void write_rate_csv(std::ostream& os, const RateReport& r);
void write_rate_plotdata(std::ostream& os, const RateReport& r);
nlohmann::json rate_summary(const RateReport& r);

void write_tail_csv(std::ostream& os, const TailReport& r);
void write_tail_plotdata(std::ostream& os, const TailReport& r);
nlohmann::json tail_summary(const TailReport& r);

void write_lq_csv(std::ostream& os, const LqReport& r);
nlohmann::json lq_summary(const LqReport& r);

void write_gamma_csv(std::ostream& os, const GammaBoundReport& r);
nlohmann::json gamma_summary(const GammaBoundReport& r);

nlohmann::json gauss_tail_summary(const GaussTailReport& r);
nlohmann::json growth_summary(const ConstantGrowthReport& r);

}  // namespace rplab
