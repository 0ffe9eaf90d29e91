#pragma once

#include "latinpat/latin_square.hpp"
#include "latinpat/pattern.hpp"

#include <iosfwd>
#include <string>

namespace latinpat {

// Square file: optional '#' comment lines, a line holding n, then n lines of
// n space-separated symbols. Parse failures throw Error(Parse); a well-formed
// but non-Latin grid throws the validate_latin error.
LatinSquare read_square(std::istream& in);
LatinSquare read_square_file(const std::string& path);
void write_square(std::ostream& out, const LatinSquare& square);

// Pattern file: a line "k l", then k lines of l tokens (integer or '*').
GeneralizedPattern read_pattern(std::istream& in);
GeneralizedPattern read_pattern_file(const std::string& path);
void write_pattern(std::ostream& out, const GeneralizedPattern& pattern);

}  // namespace latinpat
