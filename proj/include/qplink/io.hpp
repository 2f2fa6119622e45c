#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qplink/braid.hpp"
#include "qplink/degree.hpp"
#include "qplink/laurent.hpp"
#include "qplink/linking.hpp"
#include "qplink/nulllines.hpp"
#include "qplink/s3link.hpp"
#include "qplink/trig.hpp"

namespace qplink {

using Json = nlohmann::ordered_json;

Json to_json(const BraidWord& b);
BraidWord braid_from_json(const Json& j);

/// Per component: F and G as arrays of [k, re, im].
Json to_json(const BraidParametrization& p);
BraidParametrization parametrization_from_json(const Json& j);

/// {"terms": [{"du", "dv", "re", "im"}...], "lambda", "shift", "non_generic", "braid"?}
Json to_json(const BiPolyUV& f);
BiPolyUV poly_from_json(const Json& j);

Json to_json(const DegreeBoundReport& r);
Json to_json(const ValidityReport& r);
Json to_json(const LayerReadout& r);
Json to_json(const LinkReadout& r);
Json to_json(const TuneResult& r);
Json to_json(const NullLineSet& s);
Json to_json(const StabilityReport& r);

Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline; byte-identical for equal input.
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

/// Wavefront OBJ: "v x y z" vertices and one "l" element per curve; closed
/// curves repeat their first index. Coordinates keep 17 significant digits.
void write_obj(std::ostream& os, const std::vector<Curve>& curves);
std::vector<Curve> read_obj(std::istream& is);

/// CSV with header x,y,z,component. The format has no closure flag, so the
/// reader marks every curve with `closed`.
void write_curve_csv(std::ostream& os, const std::vector<Curve>& curves);
std::vector<Curve> read_curve_csv(std::istream& is, bool closed = true);

/// Sphere intersections as t,r,re_u,im_u,layer,strand.
void write_link_csv(std::ostream& os, const LinkReadout& link);

/// A curve for h-trace: x,y,z columns and an optional parameter column "s".
struct ParamCurve {
  Polyline points;
  std::vector<double> param;  // empty without an "s" column
};
ParamCurve read_param_curve_csv(std::istream& is);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace qplink
