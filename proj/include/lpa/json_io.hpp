#ifndef LPA_JSON_IO_HPP
#define LPA_JSON_IO_HPP

#include "json.hpp"

#include "lpa/qalg.hpp"

namespace lpa {

using Json = nlohmann::json;

// Element literals in the expression syntax; these round-trip through the
// expression parser.
std::string pe_literal(const Ctx& c, const PathElement& a);
PathElement pe_from_literal(const Ctx& c, const std::string& text);
std::string path_literal(const Ctx& c, const Path& p);
Path path_from_literal(const Ctx& c, const std::string& text);

Json linrep_to_json(const Ctx& c, const LinRep& r);
LinRep linrep_from_json(const Ctx& c, const Json& j);

Json qelement_to_json(const Ctx& c, const QElement& x); // carries schema: 1
QElement qelement_from_json(const Ctx& c, const Json& j);

} // namespace lpa

#endif
