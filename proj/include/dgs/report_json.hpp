#pragma once

#include <string>
#include <vector>

#include "dgs/graph.hpp"
#include "dgs/harnack.hpp"
#include "dgs/shnol.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

// One real, 17 significant digits (shortest forms like 0.1 stay exact on
// round-trip); NaN and infinities become null.
std::string json_real(double v);
std::string json_quote(const std::string& s);

// Report serializers. Layouts are stable and documented in the README; the
// shnol report is a bare array of row objects so it can be consumed as a
// table directly.
std::string spectrum_to_json(const WeightedGraph& g, const SpectralResult& r,
                             const double* second);
std::string supersolution_to_json(const WeightedGraph& g, const SupersolutionCertificate& c);
std::string harnack_to_json(const WeightedGraph& g, const HarnackReport& r);
std::string shnol_rows_to_json(const std::vector<ShnolRow>& rows);
std::string shnol_rows_to_csv(const std::vector<ShnolRow>& rows);
std::string boundary_to_json(const WeightedGraph& g, const BoundaryReport& b,
                             const CheegerReport* cheeger);
std::string exhaustion_to_json(const std::vector<ExhaustionRow>& rows);

// Writes to a file, or to stdout when path is "-". Throws InputError when the
// file cannot be opened.
void write_report(const std::string& path, const std::string& content);

}  // namespace dgs
