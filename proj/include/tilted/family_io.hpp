#pragma once

// Family document format shared by every CLI subcommand:
//   {"n": int, "p": int, "q": int, "patterns": bool, "sets": [[int,...],...]}
// Each inner list holds strictly increasing elements of [n]; masks never
// serialize as raw integers. Parsing reports the offending field by name.

#include "tilted/rational.hpp"
#include "tilted/subset.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tilted {

using Json = nlohmann::ordered_json;

struct FamilyDocument {
  Family family;
  TiltParams params;
};

FamilyDocument parse_family_document(const std::string& text);
FamilyDocument load_family_document(const std::string& path);

Json subset_json(const Subset& s);
Json family_document_json(const Family& fam, const TiltParams& params);

}  // namespace tilted
