#pragma once

#include <string>

#include "qmc/system.hpp"

namespace qmc::io {

/// Parses "a", "bi", "a+bi", "a-bi" (also accepting 'j' and 'I').
Complex parse_complex(const std::string& text);

/// Schema v1 interchange: {"schema_version":"1","q":{re,im},"poles":[...],
/// "matrices":[[[{re,im},...]...]...],"metadata":{...}}.
std::string tuple_to_json(const SystemTuple& t, const std::string& name = "",
                          int indent = 2);

SystemTuple tuple_from_json(const std::string& text);

SystemTuple load_tuple(const std::string& path);
void save_tuple(const SystemTuple& t, const std::string& path,
                const std::string& name = "");

}  // namespace qmc::io
