#pragma once

#include <string>

#include "json.hpp"

#include "scatlab/diagram.hpp"
#include "scatlab/fans.hpp"
#include "scatlab/theta.hpp"
#include "scatlab/transport.hpp"

namespace scat::io {

using Json = nlohmann::json;

/// Two-space indented text with sorted keys and a trailing newline.
std::string dump(const Json& j);
/// Throws ParseError on malformed text.
Json parse(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Json to_json(const ExchangeMatrix& b);
ExchangeMatrix matrix_from_json(const Json& j);

Json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

/// Walls in canonical order; rationals as "p/q".
Json to_json(const ScatteringDiagram& d);
ScatteringDiagram diagram_from_json(const Json& j);

/// Sequences are written 1-based.
Json to_json(const ChamberFan& f, const IntMatrix& b);
ChamberFan chamber_fan_from_json(const Json& j);

/// Cones in fan order with face-lattice edges [face, cone] for codimension-one inclusions.
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

Json to_json(const LaurentPolynomial& p);
LaurentPolynomial laurent_from_json(const Json& j);

/// Rank-2 picture: walls as rays from the origin with labels cut to three terms.
std::string render_svg(const ScatteringDiagram& d);
std::string render_svg(const Fan& f);

}  // namespace scat::io
