#pragma once

#include "hf/cavity.hpp"
#include "hf/library.hpp"
#include "hf/mesh.hpp"
#include "hf/model.hpp"
#include "hf/planner.hpp"
#include "hf/span.hpp"

namespace hf {

struct HousingConfig {
  double thickness = 3.0;       // within the calibrated 1..5 mm range
  double bolt_diameter = kDefaultBoltDiameter;
  int circle_segments = 32;     // inscribed tessellation, holes never undersized
  MaterialProfile profile = MaterialProfile::resin();
  bool ascii_stl = false;
};

void validate_config(const HousingConfig& cfg);

/// Cavity solids for the whole board. When `lenient` is set, components whose
/// cavity cannot be generated under the profile rules (tab package too small,
/// tabs on a non-resin process) get a plain clearance pocket instead so the
/// pipeline can still emit geometry; DRC reports those as rule errors.
std::vector<CavitySolid> board_cavities(const BoardDesign& board,
                                        const LibraryFile& lib,
                                        const MaterialProfile& profile,
                                        bool lenient);

/// Extrudes the outline to cfg.thickness, subtracts cavity pockets, isolation
/// grooves and bolt through-holes, and welds tab wedges and press bars back
/// in. The result is watertight and a single connected solid, or the call
/// raises BooleanFailure / CavityOverlap.
TriMesh build_housing(const BoardDesign& board, const BoltPlan& plan,
                      const LibraryFile& lib, const HousingConfig& cfg);

/// Same, with externally prepared cavities (used by the pipeline so DRC and
/// the mesh share one cavity list).
TriMesh build_housing_with_cavities(const BoardDesign& board, const BoltPlan& plan,
                                    const std::vector<CavitySolid>& cavities,
                                    const HousingConfig& cfg);

}  // namespace hf
