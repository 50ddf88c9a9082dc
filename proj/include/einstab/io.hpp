#ifndef EINSTAB_IO_HPP
#define EINSTAB_IO_HPP

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "einstab/signomial.hpp"
#include "einstab/slice.hpp"
#include "einstab/space.hpp"

namespace einstab {

struct CatalogEntry;

// Space-definition file:
//   {"name": "...", "dims": [20, 40], "b": ["1", "1"],
//    "triples": [{"i": 0, "j": 1, "k": 1, "value": "10"}]}
// b is optional (defaults to 1). Custom-entry files may add
//   "eliminate": 0, "critical_point": ["1"], "kernel_direction": ["1"],
//   "expected_s3": "180"
// Rational fields take "p/q" strings or JSON integers; critical_point and
// kernel_direction also accept floating numbers.
struct SpaceFile {
  HomogeneousSpace space;
  std::optional<std::size_t> eliminate;
  std::optional<Coords> critical_point;
  std::optional<Coords> kernel_direction;
  std::optional<Number> expected_s3;
};

// Throws ParseError carrying "source:line:column: message" for syntax errors
// and "source:line: field: message" for bad values.
SpaceFile parse_space_file(std::string_view text, std::string_view source = "<input>");
SpaceFile read_space_file(const std::string& path);

nlohmann::json space_to_json(const HomogeneousSpace& space);
// Custom-entry form of a catalog entry; throws InvalidArgument for entries
// without a structural-constant model.
nlohmann::json entry_to_json(const CatalogEntry& entry);

// Exact numbers become "p/q" strings, floats JSON numbers.
nlohmann::json number_to_json(const Number& value);
nlohmann::json coords_to_json(const Coords& coords);

}  // namespace einstab

#endif
