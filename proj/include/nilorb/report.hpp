#ifndef NILORB_REPORT_HPP
#define NILORB_REPORT_HPP

#include <string>
#include <vector>

#include "nilorb/geometry.hpp"

namespace nilorb {

/// Compact JSON object for one point report; field names match the struct.
std::string report_to_json(const GeometryReport& r);

std::string report_csv_header();  // s,t,eta1,eta2,residual_name,value
std::vector<std::string> report_csv_rows(const GeometryReport& r);

}  // namespace nilorb

#endif
