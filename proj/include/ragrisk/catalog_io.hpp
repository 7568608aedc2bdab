#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ragrisk/model.hpp"
#include "ragrisk/validate.hpp"

namespace ragrisk {

/// Where a catalog problem was found. `line`/`column` are 1-based; they are 0
/// when only the document path is known.
struct SourceLocation {
    std::filesystem::path file;
    int line = 0;
    int column = 0;
    std::string pointer;

    std::string to_string() const;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed syntax, or required catalog files missing.
class ParseError : public CatalogError {
public:
    ParseError(SourceLocation location, const std::string& message);
    const SourceLocation& location() const { return location_; }

private:
    SourceLocation location_;
};

/// Well-formed syntax but wrong shape: unknown key, wrong type, out-of-range
/// factor, missing schema_version, ...
class SchemaError : public CatalogError {
public:
    SchemaError(SourceLocation location, const std::string& message);
    const SourceLocation& location() const { return location_; }

private:
    SourceLocation location_;
};

/// Structurally sound catalogs that violate cross-reference or type
/// invariants.
class ValidationError : public CatalogError {
public:
    explicit ValidationError(std::vector<Finding> findings);
    const std::vector<Finding>& findings() const { return findings_; }

private:
    std::vector<Finding> findings_;
};

class IoError : public CatalogError {
public:
    using CatalogError::CatalogError;
};

enum class Syntax { yaml, json };

inline constexpr const char* kModelFile = "model";
inline constexpr const char* kThreatsFile = "threats";
inline constexpr const char* kControlsFile = "controls";

/// Reads model/threats/controls (.yaml or .json) from `root_dir` and checks
/// syntax and schema only. Throws ParseError or SchemaError.
Workspace parse_workspace(const std::filesystem::path& root_dir);

/// parse_workspace followed by validate_workspace; throws ValidationError when
/// any finding is present.
Workspace load_workspace(const std::filesystem::path& root_dir);

/// Writes the three catalogs in canonical form (declaration order kept, map
/// keys sorted, UTF-8, LF). Refuses to write next to a catalog of the other
/// syntax. Throws IoError.
void save_workspace(const Workspace& ws, const std::filesystem::path& root_dir, Syntax syntax = Syntax::yaml);

/// Canonical text of one catalog document, as written by save_workspace.
std::string render_model(const Workspace& ws, Syntax syntax);
std::string render_threats(const Workspace& ws, Syntax syntax);
std::string render_controls(const Workspace& ws, Syntax syntax);

}  // namespace ragrisk
