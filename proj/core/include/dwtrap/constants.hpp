#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dwtrap {

// CODATA-2018 values, SI units throughout.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double amu = 1.66053907e-27;       // kg
}  // namespace constants

struct IonSpecies {
    std::string name;
    double mass_kg;
};

// Species registry. Only 40Ca+ is needed for the stock experiments, but any
// mass can be supplied directly through ion_species_from_mass().
IonSpecies ion_species(std::string_view name);
IonSpecies ion_species_from_mass(double mass_amu);

}  // namespace dwtrap
