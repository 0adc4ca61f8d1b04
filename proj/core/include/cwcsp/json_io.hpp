#pragma once

#include <string>
#include <string_view>

#include "cwcsp/language.hpp"

namespace cwcsp {

Language parse_language(std::string_view text);
Formula parse_instance(std::string_view text, const Language& lang);

std::string serialize(const Language& lang);
std::string serialize(const Formula& formula);
/// Language fields and instance fields in one document.
std::string serialize(const Language& lang, const Formula& formula);

std::string read_file(const std::string& path);

}  // namespace cwcsp
