#pragma once

#include <map>
#include <string>
#include <variant>

#include "cpmfrob/canonicalize.hpp"

namespace cpmfrob::io {

using Metadata = std::map<std::string, std::string>;

/// One parsed structure file: an fHilb algebra, a CP comonoid, or a CP map.
struct StructureFile {
    std::variant<FrobeniusAlgebra, CpComonoid, CpMap> payload;
    Metadata metadata;

    const char* kind() const;
};

// JSON text, schema version "1"; complex numbers are [re, im] pairs,
// matrices row-major nested arrays.
std::string emit_structure(const StructureFile& s);
StructureFile parse_structure(const std::string& text);

void save_structure(const std::string& path, const StructureFile& s);
StructureFile load_structure(const std::string& path);

}  // namespace cpmfrob::io
