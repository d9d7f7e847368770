#include "adlv/render.hpp"

#include <algorithm>

#include "adlv/alcoves.hpp"
#include "adlv/error.hpp"

namespace adlv {

namespace {

// closed base alcove in coweight coordinates: cut out by the simple walls
// and, per component, the wall of the highest root at level -1
std::vector<RatVec> base_alcove_vertices(const RootDatum& rd) {
  if (rd.components().size() == 1) {
    const IVec& top = rd.roots()[rd.components()[0].highest].rc;
    return {{Rat(0), Rat(0)},
            {Rat(-1, (long)top[0]), Rat(0)},
            {Rat(0), Rat(-1, (long)top[1])}};
  }
  return {{Rat(0), Rat(0)},
          {Rat(-1), Rat(0)},
          {Rat(-1), Rat(-1)},
          {Rat(0), Rat(-1)}};
}

std::string pt(const Rat& x, const Rat& y) {
  // flip the vertical axis: screen y grows downward
  return rat_fixed6(x) + "," + rat_fixed6(-y);
}

}  // namespace

std::string render_apartment(const RootDatum& rd, const AffineElement& b,
                             int max_length) {
  if (rd.rank() != 2)
    fail("RankNotTwo", "apartment rendering needs total rank 2");
  if (!all_zero(newton(b).nu_bar))
    fail("NotBasic", "b is not basic");

  std::vector<RatVec> base = base_alcove_vertices(rd);
  std::vector<AffineElement> xs = elements_up_to_length(rd, max_length, false);

  std::vector<std::vector<RatVec>> polys;
  std::vector<bool> fills;
  Rat x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  for (const AffineElement& x : xs) {
    RatVec shift = to_ratvec(rd.to_cw(x.lambda));
    std::vector<RatVec> poly;
    for (const RatVec& v : base) {
      RatVec img = ratvec_add(rd.weyl().act_cw(x.w, v), shift);
      x0 = std::min(x0, img[0]);
      x1 = std::max(x1, img[0]);
      y0 = std::min(y0, img[1]);
      y1 = std::max(y1, img[1]);
      poly.push_back(std::move(img));
    }
    polys.push_back(std::move(poly));
    fills.push_back(nonempty_basic_criterion(x, b));
  }
  Rat pad(1, 2);
  x0 -= pad;
  y0 -= pad;
  x1 += pad;
  y1 += pad;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
                    rat_fixed6(x0) + " " + rat_fixed6(-y1) + " " +
                    rat_fixed6(x1 - x0) + " " + rat_fixed6(y1 - y0) + "\">\n";
  for (size_t i = 0; i < polys.size(); ++i) {
    svg += "<polygon points=\"";
    for (size_t k = 0; k < polys[i].size(); ++k) {
      if (k)
        svg += ' ';
      svg += pt(polys[i][k][0], polys[i][k][1]);
    }
    svg += fills[i] ? "\" fill=\"#2e8b57\"" : "\" fill=\"#b22222\"";
    svg += " stroke=\"#ffffff\" stroke-width=\"0.015\"/>\n";
  }

  // strips with index 0 around every root hyperplane bound the shrunken
  // chambers; draw both walls of each strip, clipped to the viewport
  for (int r = 0; r < rd.num_pos(); ++r) {
    const IVec& rc = rd.roots()[r].rc;
    for (Int level : {Int(0), Int(-1)}) {
      std::vector<std::pair<Rat, Rat>> pts;
      auto push_unique = [&pts](const Rat& px, const Rat& py) {
        for (auto& [qx, qy] : pts)
          if (qx == px && qy == py)
            return;
        pts.emplace_back(px, py);
      };
      // intersect rc[0] u + rc[1] v = level with the four box edges
      if (rc[0] != 0)
        for (const Rat& v : {y0, y1}) {
          Rat u = (Rat((long)level) - v * (long)rc[1]) / (long)rc[0];
          if (u >= x0 && u <= x1)
            push_unique(u, v);
        }
      if (rc[1] != 0)
        for (const Rat& u : {x0, x1}) {
          Rat v = (Rat((long)level) - u * (long)rc[0]) / (long)rc[1];
          if (v >= y0 && v <= y1)
            push_unique(u, v);
        }
      if (pts.size() >= 2)
        svg += "<line x1=\"" + rat_fixed6(pts[0].first) + "\" y1=\"" +
               rat_fixed6(-pts[0].second) + "\" x2=\"" +
               rat_fixed6(pts[1].first) + "\" y2=\"" +
               rat_fixed6(-pts[1].second) +
               "\" stroke=\"#1a1a1a\" stroke-width=\"0.025\" "
               "stroke-dasharray=\"0.1,0.06\"/>\n";
    }
  }

  svg += "<polygon points=\"";
  for (size_t k = 0; k < base.size(); ++k) {
    if (k)
      svg += ' ';
    svg += pt(base[k][0], base[k][1]);
  }
  svg += "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.05\"/>\n</svg>\n";
  return svg;
}

}  // namespace adlv
