#include "dwtrap/constants.hpp"

#include "dwtrap/errors.hpp"

namespace dwtrap {

IonSpecies ion_species(std::string_view name) {
    // mass numbers in amu; isotope masses rounded to the integer mass number
    // are plenty for trap-geometry work
    if (name == "ca40") return {"ca40", 40.0 * constants::amu};
    if (name == "be9") return {"be9", 9.0 * constants::amu};
    if (name == "mg24") return {"mg24", 24.0 * constants::amu};
    if (name == "sr88") return {"sr88", 88.0 * constants::amu};
    if (name == "ba138") return {"ba138", 138.0 * constants::amu};
    throw domain_error("unknown ion species: " + std::string(name));
}

IonSpecies ion_species_from_mass(double mass_amu) {
    if (!(mass_amu > 0.0))
        throw domain_error("ion mass must be positive");
    return {"custom", mass_amu * constants::amu};
}

}  // namespace dwtrap
