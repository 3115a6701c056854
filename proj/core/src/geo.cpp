#include "multifact/geo.hpp"

#include "multifact/errors.hpp"

namespace multifact {

std::string to_string(Continent c) {
    switch (c) {
        case Continent::Africa: return "Africa";
        case Continent::America: return "America";
        case Continent::Asia: return "Asia";
        case Continent::Europe: return "Europe";
    }
    throw Error("invalid Continent value");
}

Continent parse_continent(std::string_view name) {
    if (name == "Africa") return Continent::Africa;
    if (name == "America") return Continent::America;
    if (name == "Asia") return Continent::Asia;
    if (name == "Europe") return Continent::Europe;
    throw Error("unknown continent: " + std::string(name));
}

}  // namespace multifact
