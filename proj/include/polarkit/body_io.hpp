#pragma once

#include "polarkit/body.hpp"

#include <string>

namespace polarkit {

// Body description format (one `key = value` per line, `#` starts a comment):
//
//   type = ball | ellipsoid | hpolytope | vpolytope | lp_ball | linear_image
//   dimension = N
//   radius = r                      (ball, lp_ball)
//   p = value | inf                 (lp_ball)
//   row = m_1 ... m_N               (ellipsoid shape or linear_image map, N lines)
//   normal = a_1 ... a_N            (hpolytope, one line per normal)
//   vertex = v_1 ... v_N            (vpolytope, one line per vertex)
//   begin base                      (linear_image: nested body description)
//   ...
//   end base
//
// Numbers are written in shortest round-trip form, so parse(format(K))
// reproduces K exactly.

std::string format_body(const ConvexBody& k);
ConvexBody parse_body(const std::string& text);
ConvexBody read_body_file(const std::string& path);
void write_body_file(const ConvexBody& k, const std::string& path);

/// 64-bit FNV-1a hash of format_body(k), as 16 hex digits.
std::string body_hash(const ConvexBody& k);

/// Shortest round-trip decimal form; "inf" / "-inf" for infinities.
std::string format_double(double x);

}  // namespace polarkit
