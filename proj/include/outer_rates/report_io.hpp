#pragma once

#include <string>

#include <json.hpp>

#include "outer_rates/dynamics.hpp"
#include "outer_rates/intpoly.hpp"
#include "outer_rates/outer_geometry.hpp"
#include "outer_rates/roots.hpp"
#include "outer_rates/traintrack.hpp"
#include "outer_rates/words.hpp"

namespace outer_rates {

using Json = nlohmann::ordered_json;

// All floating values pass through a 15-significant-digit round before
// serialization so identical runs emit identical bytes.
double round15(double v);
Json num(double v);

Json word_json(const Word& w);
Json automorphism_json(const Automorphism& a);
Json family_json(const FamilyPair& fam);
Json matrix_json(const IntMatrix& m);
Json certificate_json(const IrreducibilityCertificate& c);
Json bracket_json(const CertifiedBracket& b);
Json root_report_json(const RootReport& r);
Json root_positions_json(const RootPositionsReport& r);
Json spectral_json(const SpectralReport& s);
Json gates_json(const GatePartition& g);
Json whitehead_json(const WhiteheadGraph& w);
Json turns_json(const std::vector<Turn>& ts);
Json train_track_json(const TrainTrackCheck& t);
Json pf_json(const PFData& p);
Json full_irreducibility_json(const FullIrreducibilityReport& r);
Json audit_json(const std::vector<AuditRow>& rows);
Json separation_json(const SeparationReport& r);
Json trajectory_json(const LengthTrajectory& t);
Json rate_json(const RateEstimate& r);

}  // namespace outer_rates
