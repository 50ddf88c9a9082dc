#include "einstab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "einstab/catalog.hpp"
#include "einstab/error.hpp"

namespace einstab {

namespace {

using nlohmann::json;

struct Context {
  std::string_view text;
  std::string_view source;

  // 1-based line of the first occurrence of needle, 0 if absent.
  std::size_t line_of(std::string_view needle) const {
    const auto pos = needle.empty() ? std::string_view::npos : text.find(needle);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
  }

  [[noreturn]] void fail(const std::string& field, const std::string& message, std::string_view needle = {}) const {
    std::ostringstream out;
    out << source;
    if (const std::size_t line = line_of(needle)) out << ':' << line;
    out << ": " << field << ": " << message;
    throw ParseError(out.str());
  }
};

Rational rational_field(const json& v, const Context& ctx, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      return parse_rational(s);
    } catch (const ParseError& e) {
      ctx.fail(field, e.what(), "\"" + s + "\"");
    }
  }
  ctx.fail(field, "expected a rational literal \"p/q\" or an integer", v.dump());
}

std::size_t index_field(const json& obj, const char* key, const Context& ctx, const std::string& field) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned())
    ctx.fail(field + "." + key, "expected a nonnegative integer index");
  return obj[key].get<std::size_t>();
}

Coords coords_field(const json& v, const Context& ctx, const std::string& field) {
  if (!v.is_array() || v.empty()) ctx.fail(field, "expected a nonempty array", "\"" + field + "\"");
  const bool all_exact = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string() || e.is_number_integer(); });
  if (all_exact) {
    std::vector<Rational> values;
    for (std::size_t i = 0; i < v.size(); ++i) values.push_back(rational_field(v[i], ctx, field + "[" + std::to_string(i) + "]"));
    return Coords::from_exact(std::move(values));
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) ctx.fail(field + "[" + std::to_string(i) + "]", "expected a number", "\"" + field + "\"");
    values.push_back(v[i].get<double>());
  }
  return Coords::from_double(std::move(values));
}

SpaceFile read_fields(const json& doc, const Context& ctx);

}  // namespace

SpaceFile parse_space_file(std::string_view text, std::string_view source) {
  const Context ctx{text, source};
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
    const auto last_nl = text.substr(0, byte).rfind('\n');
    const std::size_t column = last_nl == std::string_view::npos ? byte + 1 : byte - last_nl;
    std::ostringstream out;
    out << source << ':' << line << ':' << column << ": malformed JSON (" << e.what() << ')';
    throw ParseError(out.str());
  }
  if (!doc.is_object()) ctx.fail("<root>", "expected a JSON object");
  try {
    return read_fields(doc, ctx);
  } catch (const json::exception& e) {
    ctx.fail("<document>", e.what());
  }
}

namespace {

SpaceFile read_fields(const json& doc, const Context& ctx) {
  SpaceFile file;
  HomogeneousSpace& space = file.space;
  space.name = doc.value("name", std::string("custom"));
  if (!doc.contains("dims") || !doc["dims"].is_array()) ctx.fail("dims", "missing array of summand dimensions");
  for (std::size_t k = 0; k < doc["dims"].size(); ++k) {
    const json& d = doc["dims"][k];
    if (!d.is_number_integer()) ctx.fail("dims[" + std::to_string(k) + "]", "expected an integer", "\"dims\"");
    space.dims.push_back(d.get<long>());
  }
  if (doc.contains("b")) {
    if (!doc["b"].is_array()) ctx.fail("b", "expected an array", "\"b\"");
    for (std::size_t k = 0; k < doc["b"].size(); ++k) space.b.push_back(rational_field(doc["b"][k], ctx, "b[" + std::to_string(k) + "]"));
  } else {
    space.b.assign(space.dims.size(), Rational(1));
  }
  if (doc.contains("triples")) {
    if (!doc["triples"].is_array()) ctx.fail("triples", "expected an array", "\"triples\"");
    for (std::size_t t = 0; t < doc["triples"].size(); ++t) {
      const json& e = doc["triples"][t];
      const std::string field = "triples[" + std::to_string(t) + "]";
      if (!e.is_object() || !e.contains("value")) ctx.fail(field, "expected {i, j, k, value}", "\"triples\"");
      space.triples.push_back({index_field(e, "i", ctx, field), index_field(e, "j", ctx, field),
                               index_field(e, "k", ctx, field), rational_field(e["value"], ctx, field + ".value")});
    }
  }
  if (doc.contains("eliminate")) {
    if (!doc["eliminate"].is_number_unsigned()) ctx.fail("eliminate", "expected a summand index", "\"eliminate\"");
    file.eliminate = doc["eliminate"].get<std::size_t>();
  }
  if (doc.contains("critical_point")) file.critical_point = coords_field(doc["critical_point"], ctx, "critical_point");
  if (doc.contains("kernel_direction")) file.kernel_direction = coords_field(doc["kernel_direction"], ctx, "kernel_direction");
  if (doc.contains("expected_s3")) {
    const json& v = doc["expected_s3"];
    if (v.is_number_float())
      file.expected_s3 = v.get<double>();
    else
      file.expected_s3 = rational_field(v, ctx, "expected_s3");
  }
  return file;
}

}  // namespace

SpaceFile read_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open space file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_space_file(buf.str(), path);
}

json number_to_json(const Number& value) {
  if (const auto* q = std::get_if<Rational>(&value)) return to_string(*q);
  return std::get<double>(value);
}

json coords_to_json(const Coords& coords) {
  json out = json::array();
  if (coords.exact)
    for (const auto& q : *coords.exact) out.push_back(to_string(q));
  else
    for (double x : coords.approx) out.push_back(x);
  return out;
}

json space_to_json(const HomogeneousSpace& space) {
  json out;
  out["name"] = space.name;
  out["dims"] = space.dims;
  json b = json::array();
  for (const auto& q : space.b) b.push_back(to_string(q));
  out["b"] = b;
  json triples = json::array();
  for (const auto& t : space.triples) triples.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"value", to_string(t.value)}});
  out["triples"] = triples;
  return out;
}

json entry_to_json(const CatalogEntry& entry) {
  if (!entry.space) throw InvalidArgument("entry '" + entry.label + "' has no structural-constant model");
  json out = space_to_json(*entry.space);
  out["eliminate"] = entry.chart.eliminated;
  out["critical_point"] = coords_to_json(entry.critical_point);
  if (entry.kernel_direction) out["kernel_direction"] = coords_to_json(*entry.kernel_direction);
  if (entry.expected_s3) out["expected_s3"] = number_to_json(*entry.expected_s3);
  return out;
}

}  // namespace einstab
