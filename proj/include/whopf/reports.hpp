#pragma once

#include "whopf/io.hpp"

#include <optional>
#include <string>

namespace whopf {

// each builder also returns whether every property it reports holds

struct Built {
    Report report;
    bool ok = true;
};

Built verify_report(const WeakHopfAlgebra& w, double tol);
Built classify_report(const WeakHopfAlgebra& w, double tol);
Built action_report(const Action& act, double tol);
Built fusion_report(const FusionRing& fr);
Built inclusion_report(const Inclusion& inc);

struct DualizeOutput {
    Built built;
    DualPair pair;
};
DualizeOutput dualize_report(const WeakHopfAlgebra& w, Rng& rng, double tol);

struct TowerOptions {
    bool extract = false;
    bool dress = true;
    double tol = 1e-9;
};
struct TowerOutput {
    Built built;
    std::optional<ExtractionResult> extraction;
};
TowerOutput tower_report(const Inclusion& inc, Rng& rng, const TowerOptions& opt);

Built sectors_report(const FusionRing& fr, const SectorData& data, bool locality_requested);

}  // namespace whopf
