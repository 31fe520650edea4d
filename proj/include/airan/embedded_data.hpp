#pragma once

#include <string_view>

// Contents of the files under data/, compiled into the library.
namespace airan::embedded {

std::string_view platforms_json();
std::string_view ran_weekly_csv();
std::string_view llm_weekly_csv();
std::string_view milan_s1_json();
std::string_view milan_s2_json();

}  // namespace airan::embedded
