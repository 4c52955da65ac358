#pragma once

#include <string>
#include <utility>
#include <vector>

#include "supergerbe/bodysoul.hpp"
#include "supergerbe/error.hpp"
#include "supergerbe/gerbe.hpp"

namespace supergerbe {

// Parse or shape error with a 1-based source position and the offending key path.
class ManifestError : public Error {
 public:
  ManifestError(int line, int column, std::string field, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  int column_;
  std::string field_;
};

// One supermanifold with cover plus named objects.
struct Manifest {
  CoverPtr cover;
  std::vector<std::pair<std::string, SuperForm>> forms;
  std::vector<std::pair<std::string, GerbeCocycle>> gerbes;

  const SuperForm& form(const std::string& name) const;
  const GerbeCocycle& gerbe(const std::string& name) const;
  void set_gerbe(const std::string& name, GerbeCocycle g);
  void set_form(const std::string& name, SuperForm f);
};

Manifest parse_manifest(const std::string& text);
std::string emit_manifest(const Manifest& m);
bool same_manifest(const Manifest& a, const Manifest& b);

// Cover identities plus every gerbe's cocycle check.
Report validate_manifest(const Manifest& m, const Exec& exec = {});

// "manifest", "certificate" or "decomposition".
std::string document_kind(const std::string& text);

std::string emit_certificate(const Manifest& m, const std::string& gerbe, const TrivializationCertificate& cert);
TrivializationCertificate parse_certificate(const std::string& text, const Manifest& m, std::string* gerbe = nullptr);

std::string emit_decomposition(const Manifest& m, const std::string& gerbe, const DecompositionResult& r);
DecompositionResult parse_decomposition(const std::string& text, const Manifest& m, std::string* gerbe = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace supergerbe
