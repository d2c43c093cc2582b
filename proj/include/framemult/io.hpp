#pragma once

#include "framemult/catalogue.hpp"
#include "framemult/convergence.hpp"
#include "framemult/inversion.hpp"

#include "json.hpp"

#include <string>

namespace framemult {

using Json = nlohmann::json;

// Complex numbers are [re, im]; non-finite reals are the strings "inf",
// "-inf" and "nan". Parse errors throw SchemaError with a JSON pointer.
Json to_json(Complex z);
Json real_to_json(double v);
Json to_json(const Vector& v);
Json to_json(const ClassTags& t);
Json to_json(const SymbolTags& t);
Json to_json(const SequenceFamily& f);
Json to_json(const Symbol& m);
Json to_json(const AnalyticHints& h);
Json to_json(const MultiplierSpec& s);
Json to_json(const FrameBounds& b);
Json to_json(const InvertCertificate& c);
Json to_json(const DiagnosticsReport& r);
Json to_json(const RieszSideReport& r);
Json to_json(const FixtureInfo& f);
Json to_json(const ExpectedFact& f);
// Spec document plus a "fixture" reference block.
Json to_json(const FixtureInstance& f);

Complex complex_from_json(const Json& j, const std::string& pointer);
double real_from_json(const Json& j, const std::string& pointer);
Vector vector_from_json(const Json& j, const std::string& pointer);
SequenceFamily family_from_json(const Json& j, const std::string& pointer);
Symbol symbol_from_json(const Json& j, const std::string& pointer);
AnalyticHints hints_from_json(const Json& j, const std::string& pointer);

// Accepts {"m", "phi", "psi", "hints"?, "label"?} or
// {"fixture": {"id", "params"?, "dim"?}}; `dim` overrides the fixture dim.
MultiplierSpec spec_from_json(const Json& j, std::optional<Index> dim = std::nullopt,
                              const std::string& pointer = "");

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace framemult
