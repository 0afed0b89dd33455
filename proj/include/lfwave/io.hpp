#pragma once

#include <json.hpp>
#include <string>

#include "lfwave/verify.hpp"

namespace lfwave::io {

using Json = nlohmann::ordered_json;

// Elements are arrays of [position, a, b] triples in position order.
Json to_json(const Element& x);
Json to_json(const GroupDescriptor& g);
Json to_json(const Ball& b, const GroupDescriptor& g);
Json to_json(const BallSet& s, const GroupDescriptor& g);
Json to_json(const StepFunction& f);
Json to_json(const BasisIndex& idx);
Json to_json(const WaveletSetResult& res, const GroupDescriptor& g);
Json to_json(const GramReport& rep, const GroupDescriptor& g);
Json to_json(const ParsevalReport& rep);
Json to_json(const CompareReport& rep);
Json measure_to_json(const Measure& m);
Json complex_to_json(Complex z);

// Parsers report the offending field as a JSON pointer, e.g. "/cells/3".
Element element_from_json(const Json& j, const GroupDescriptor& g, const std::string& path = "");
GroupDescriptor group_from_json(const Json& j, const std::string& path = "");
StepFunction step_function_from_json(const Json& j, const Limits& limits = {}, const std::string& path = "");
Measure measure_from_json(const Json& j, const std::string& path = "");

// Digits written as "pos:a" or "pos:a:b", comma separated; "" is zero.
std::string digits_string(const Element& x);
Element element_from_string(const std::string& text, const GroupDescriptor& g);

// CSV bodies with a fixed header line.
std::string gram_csv(const GramReport& rep);
std::string parseval_csv(const ParsevalReport& rep);
std::string compare_csv(const CompareReport& rep);

std::string format_double(double v);

}  // namespace lfwave::io
