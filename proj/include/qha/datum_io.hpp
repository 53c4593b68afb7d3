#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "qha/datum.hpp"
#include "qha/report.hpp"

namespace qha {

inline constexpr int kSchemaVersion = 1;

/** Everything one datum file holds. */
struct DatumFile {
  CartanDatum datum;
  Linking lambda;
  RootParams mu;
  std::optional<CocycleParams> c;
  long budget = 0;  // 0: use QHA_BUDGET or the default
  std::string recipe;
  std::map<std::string, long> recipe_args;
};

/** Human-readable description of the file format, printed on usage errors. */
const char* datum_schema();

/** Throws SchemaError on a missing, mistyped, out-of-range or unknown field. */
DatumFile parse_datum(const nlohmann::json& j);
DatumFile read_datum(const std::string& path);
nlohmann::json to_json(const DatumFile& d);
DatumFile from_factory(const FactoryOutput& f);

/** {"conductor": M, "terms": [[e, "p/q"], ...]} on the power basis; a bare integer is accepted too. */
nlohmann::json cyclo_to_json(const CycloNumber& x);
CycloNumber cyclo_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& r);

}  // namespace qha
