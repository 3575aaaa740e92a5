#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "gstruct/catalog.hpp"
#include "json.hpp"

namespace gs {

// Malformed input: bad JSON, unknown names, bad indices, bad expressions.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct StructureFile {
  std::string name;
  AnyStructure structure;
  std::optional<BilinearForm> metric;
  // Non-empty for one-parameter families.
  std::string derivation;
  std::optional<Evolution> evolution;
  std::map<std::string, bool> expect;
  std::string assumptions;
};

const FramePtr& structure_frame(const AnyStructure& s);
const LocusPtr& structure_locus(const AnyStructure& s);
std::string structure_kind(const AnyStructure& s);
// Named forms in a fixed order (eta, omega1.. / F, psi+, psi- / phi, star_phi).
std::vector<std::pair<std::string, Form>> structure_forms(const AnyStructure& s);

// Throws IoError for malformed documents, RingError/FrameError/LieError when
// the described ring or frame is inconsistent.
StructureFile structure_from_json(const nlohmann::json& doc);
StructureFile read_structure_file(const std::string& path);

nlohmann::json structure_to_json(const StructureFile& f);
void write_structure_file(const StructureFile& f, const std::string& path);

StructureFile from_catalog(const CatalogEntry& e);

nlohmann::json form_to_json(const Form& a);
Form form_from_json(const FramePtr& frame, const nlohmann::json& terms, int degree,
                    const std::string& path);

}  // namespace gs
