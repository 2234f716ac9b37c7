#include "tilted/family_io.hpp"

#include <fstream>
#include <sstream>

namespace tilted {

namespace {

long long require_integer(const Json& doc, const char* field, long long lo,
                          long long hi) {
  if (!doc.contains(field))
    throw std::invalid_argument("missing field \"" + std::string(field) + "\"");
  const Json& v = doc.at(field);
  if (!v.is_number_integer())
    throw std::invalid_argument("field \"" + std::string(field) +
                                "\" must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw std::invalid_argument("field \"" + std::string(field) +
                                "\" out of range [" + std::to_string(lo) +
                                "," + std::to_string(hi) + "], got " +
                                std::to_string(x));
  return x;
}

}  // namespace

FamilyDocument parse_family_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("family document must be a JSON object");

  FamilyDocument out;
  const int n = static_cast<int>(require_integer(doc, "n", 1, kMaxGround));
  out.params.p = require_integer(doc, "p", 0, 1'000'000);
  out.params.q = require_integer(doc, "q", 0, 1'000'000);
  if (!doc.contains("patterns") || !doc.at("patterns").is_boolean())
    throw std::invalid_argument("field \"patterns\" must be a boolean");
  out.params.patterns = doc.at("patterns").get<bool>();
  out.params.validate();

  if (!doc.contains("sets") || !doc.at("sets").is_array())
    throw std::invalid_argument("field \"sets\" must be an array of arrays");
  std::vector<std::uint64_t> masks;
  std::size_t index = 0;
  for (const Json& entry : doc.at("sets")) {
    const std::string where = "sets[" + std::to_string(index) + "]";
    if (!entry.is_array())
      throw std::invalid_argument("field \"" + where + "\" must be an array");
    std::uint64_t bits = 0;
    long long prev = 0;
    for (const Json& el : entry) {
      if (!el.is_number_integer())
        throw std::invalid_argument("field \"" + where +
                                    "\" must hold integers");
      const long long e = el.get<long long>();
      if (e < 1 || e > n)
        throw std::invalid_argument("field \"" + where + "\" element " +
                                    std::to_string(e) +
                                    " outside [1," + std::to_string(n) + "]");
      if (e <= prev)
        throw std::invalid_argument("field \"" + where +
                                    "\" must be strictly increasing");
      prev = e;
      bits |= 1ull << (e - 1);
    }
    masks.push_back(bits);
    ++index;
  }
  const std::size_t distinct = masks.size();
  out.family = Family::from_masks(n, std::move(masks));
  if (out.family.size() != distinct)
    throw std::invalid_argument("field \"sets\" contains duplicate sets");
  return out;
}

FamilyDocument load_family_document(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open family file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_document(buf.str());
}

Json subset_json(const Subset& s) {
  Json arr = Json::array();
  for (int e : s.elements()) arr.push_back(e);
  return arr;
}

Json family_document_json(const Family& fam, const TiltParams& params) {
  Json doc;
  doc["n"] = fam.n;
  doc["p"] = params.p;
  doc["q"] = params.q;
  doc["patterns"] = params.patterns;
  Json sets = Json::array();
  for (std::size_t i = 0; i < fam.size(); ++i)
    sets.push_back(subset_json(fam.member(i)));
  doc["sets"] = std::move(sets);
  return doc;
}

}  // namespace tilted
