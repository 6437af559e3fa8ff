// PERA documents are JSON objects with the keys `actions`, `parameters`,
// `locations`, `initial`, `accepting` and `edges`. Guards are written in the
// textual guard syntax of core.hh.

#ifndef PERA_SERIALIZE_HH
#define PERA_SERIALIZE_HH

#include <string>
#include <string_view>

#include "pera/core.hh"

namespace pera {

/// Throws ParseError on malformed documents.
Pera parse_pera(std::string_view text);
std::string print_pera(const Pera& automaton);

Pera load_pera(const std::string& path);
void save_pera(const std::string& path, const Pera& automaton);

}  // namespace pera

#endif  // PERA_SERIALIZE_HH
