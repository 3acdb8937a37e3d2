#ifndef EHDSIM_EHDSIM_HPP
#define EHDSIM_EHDSIM_HPP

// Umbrella header: deterministic multi-printhead EHD spray deposition
// simulator — tip-field electrostatics, cone-jet emission, charged droplet
// transport with evaporation and Coulomb fission, roll-to-roll deposition
// accounting and layout optimization.

#include "ehdsim/config.hpp"
#include "ehdsim/constants.hpp"
#include "ehdsim/deposition.hpp"
#include "ehdsim/droplet.hpp"
#include "ehdsim/errors.hpp"
#include "ehdsim/field.hpp"
#include "ehdsim/grid_io.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/layout.hpp"
#include "ehdsim/linsolve.hpp"
#include "ehdsim/pipeline.hpp"
#include "ehdsim/printhead.hpp"
#include "ehdsim/rng.hpp"
#include "ehdsim/spray.hpp"
#include "ehdsim/transport.hpp"
#include "ehdsim/vec.hpp"
#include "ehdsim/version.hpp"

#endif // EHDSIM_EHDSIM_HPP
