#include "padic/paf.hpp"

#include <algorithm>

namespace padic {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

void Paf::normalize() {
  require(hi_.is_finite(), "Paf: right end must be finite");
  require(lo_ <= hi_, "Paf: empty domain");
  if (degenerate()) {
    require(knots_.empty() && slopes_.empty(), "Paf: degenerate domain with pieces");
    return;
  }
  require(slopes_.size() == knots_.size() + 1, "Paf: piece count mismatch");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    require(QLog(knots_[i]) > lo_ && QLog(knots_[i]) < hi_, "Paf: breakpoint outside domain");
    if (i) require(knots_[i - 1] < knots_[i], "Paf: breakpoints not increasing");
  }
  if (lo_.is_neg_inf()) require(slopes_.front() == 0, "Paf: unbounded piece must be constant");
  // maximality: drop breakpoints between equal slopes
  std::vector<Rat> ks, ss;
  ss.push_back(slopes_[0]);
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (slopes_[i + 1] == ss.back()) continue;
    ks.push_back(knots_[i]);
    ss.push_back(slopes_[i + 1]);
  }
  knots_ = std::move(ks);
  slopes_ = std::move(ss);
}

Paf Paf::constant(QLog lo, QLog hi, Rat value) {
  return affine(std::move(lo), std::move(hi), std::move(value), rat(0));
}

Paf Paf::affine(QLog lo, QLog hi, Rat value_hi, Rat slope) {
  Paf f;
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  f.value_hi_ = std::move(value_hi);
  if (!f.degenerate()) f.slopes_.push_back(std::move(slope));
  f.normalize();
  return f;
}

Paf Paf::diagonal(QLog lo, QLog hi) {
  require(lo.is_finite() && hi.is_finite(), "Paf::diagonal: needs a finite interval");
  return affine(lo, hi, hi.rat(), rat(1));
}

Paf Paf::from_pieces(QLog lo, QLog hi, std::vector<Rat> knots, std::vector<Rat> slopes,
                     Rat value_hi) {
  Paf f;
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  f.knots_ = std::move(knots);
  f.slopes_ = std::move(slopes);
  f.value_hi_ = std::move(value_hi);
  f.normalize();
  return f;
}

QLog Paf::eval(const QLog& L) const {
  require(L >= lo_ && L <= hi_, "Paf::eval: out of domain");
  if (degenerate()) return QLog(value_hi_);
  // walk down from hi through piece right-boundaries
  Rat v = value_hi_;
  Rat right = hi_.rat();
  for (std::size_t i = slopes_.size(); i-- > 0;) {
    QLog left = (i == 0) ? lo_ : QLog(knots_[i - 1]);
    if (L >= left) {
      if (L.is_neg_inf()) return QLog(v);  // constant unbounded piece
      return QLog(v - slopes_[i] * (right - L.rat()));
    }
    v -= slopes_[i] * (right - knots_[i - 1]);
    right = knots_[i - 1];
  }
  return QLog(v);
}

Rat Paf::slope_at(const QLog& L, Side side) const {
  require(!degenerate(), "Paf::slope_at: degenerate domain");
  require(L >= lo_ && L <= hi_, "Paf::slope_at: out of domain");
  require(!(L == lo_ && side == Side::Left), "Paf::slope_at: no left slope at lo");
  require(!(L == hi_ && side == Side::Right), "Paf::slope_at: no right slope at hi");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (L < QLog(knots_[i])) return slopes_[i];
    if (L == QLog(knots_[i])) return side == Side::Left ? slopes_[i] : slopes_[i + 1];
  }
  return slopes_.back();
}

Paf Paf::scaled(const Rat& c) const {
  Paf f = *this;
  for (auto& s : f.slopes_) s *= c;
  f.value_hi_ *= c;
  f.normalize();
  return f;
}

Paf Paf::plus_const(const Rat& c) const {
  Paf f = *this;
  f.value_hi_ += c;
  return f;
}

Paf Paf::restrict(const QLog& l, const QLog& r) const {
  require(l >= lo_ && r <= hi_ && l <= r, "Paf::restrict: bad subinterval");
  if (l == lo_ && r == hi_) return *this;
  Paf f;
  f.lo_ = l;
  f.hi_ = r;
  f.value_hi_ = eval(r).rat();
  if (l == r) {
    f.normalize();
    return f;
  }
  for (const auto& k : knots_)
    if (QLog(k) > l && QLog(k) < r) f.knots_.push_back(k);
  // slope of each sub-piece = left slope at its right boundary
  for (const auto& k : f.knots_) f.slopes_.push_back(slope_at(QLog(k), Side::Left));
  f.slopes_.push_back(slope_at(r, Side::Left));
  f.normalize();
  return f;
}

Paf Paf::combine(const Paf& f, const Paf& g, CombineOp op) {
  require(f.lo_ == g.lo_ && f.hi_ == g.hi_, "Paf::combine: domain mismatch");
  auto pick = [&](const Rat& a, const Rat& b) {
    return op == CombineOp::Add ? a + b : (op == CombineOp::Min ? std::min(a, b) : std::max(a, b));
  };
  if (f.degenerate()) return constant(f.lo_, f.hi_, pick(f.value_hi_, g.value_hi_));

  std::vector<Rat> ks;
  std::merge(f.knots_.begin(), f.knots_.end(), g.knots_.begin(), g.knots_.end(),
             std::back_inserter(ks));
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  auto right_bounds = [&](const std::vector<Rat>& knots) {
    std::vector<QLog> bs;
    for (const auto& k : knots) bs.push_back(QLog(k));
    bs.push_back(f.hi_);
    return bs;
  };

  if (op != CombineOp::Add) {
    // exact crossing points inside each merged piece
    std::vector<Rat> cross;
    QLog left = f.lo_;
    for (const auto& right : right_bounds(ks)) {
      Rat fs = f.slope_at(right, Side::Left), gs = g.slope_at(right, Side::Left);
      if (fs != gs) {
        Rat fv = f.eval(right).rat(), gv = g.eval(right).rat();
        Rat t = right.rat() - (gv - fv) / (gs - fs);
        if (QLog(t) > left && QLog(t) < right) cross.push_back(t);
      }
      left = right;
    }
    std::sort(cross.begin(), cross.end());
    std::vector<Rat> merged;
    std::merge(ks.begin(), ks.end(), cross.begin(), cross.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    ks = std::move(merged);
  }

  std::vector<Rat> ss;
  for (const auto& right : right_bounds(ks)) {
    Rat fs = f.slope_at(right, Side::Left), gs = g.slope_at(right, Side::Left);
    if (op == CombineOp::Add) {
      ss.push_back(fs + gs);
      continue;
    }
    Rat fv = f.eval(right).rat(), gv = g.eval(right).rat();
    bool take_f;
    if (fv != gv)
      take_f = (op == CombineOp::Min) ? fv < gv : fv > gv;
    else  // tie at the right end: compare just left of it
      take_f = (op == CombineOp::Min) ? fs > gs : fs < gs;
    ss.push_back(take_f ? fs : gs);
  }
  return from_pieces(f.lo_, f.hi_, std::move(ks), std::move(ss),
                     pick(f.value_hi_, g.value_hi_));
}

bool Paf::is_concave(const QLog& l, const QLog& r) const {
  require(l >= lo_ && r <= hi_ && l <= r, "Paf::is_concave: bad subinterval");
  if (l == r || degenerate()) return true;
  Paf sub = restrict(l, r);
  for (std::size_t i = 0; i + 1 < sub.slopes_.size(); ++i)
    if (sub.slopes_[i] < sub.slopes_[i + 1]) return false;
  return true;
}

QLog Paf::diagonal_crossing() const {
  QLog flo = eval(lo_);
  require(flo >= lo_, "Paf::diagonal_crossing: f(lo) < lo");
  if (lo_.is_neg_inf() || flo > lo_) return lo_;
  if (degenerate()) return lo_;
  QLog left = lo_;
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (slopes_[i] != 1) return left;
    left = (i < knots_.size()) ? QLog(knots_[i]) : hi_;
  }
  return hi_;
}

std::vector<Paf::Kink> Paf::convex_kinks() const {
  std::vector<Kink> out;
  for (std::size_t i = 0; i + 1 < slopes_.size(); ++i)
    if (slopes_[i] < slopes_[i + 1]) out.push_back(Kink{knots_[i], slopes_[i], slopes_[i + 1]});
  return out;
}

std::vector<Paf::Row> Paf::rows() const {
  std::vector<Row> out;
  if (degenerate()) {
    out.push_back(Row{lo_, value_hi_, rat(0)});
    out.push_back(Row{hi_, value_hi_, rat(0)});
    return out;
  }
  out.push_back(Row{lo_, eval(lo_).rat(), slopes_.front()});
  for (std::size_t i = 0; i < knots_.size(); ++i)
    out.push_back(Row{QLog(knots_[i]), eval(QLog(knots_[i])).rat(), slopes_[i + 1]});
  out.push_back(Row{hi_, value_hi_, slopes_.back()});
  return out;
}

bool Paf::operator==(const Paf& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && knots_ == o.knots_ && slopes_ == o.slopes_ &&
         value_hi_ == o.value_hi_;
}

void BranchSlopes::set(const DirectionId& d, const Rat& slope, const Prime& p) {
  for (auto& e : entries)
    if (e.first.same(d, p)) {
      e.second = slope;
      return;
    }
  entries.emplace_back(d, slope);
}

Rat BranchSlopes::get(const DirectionId& d, const Prime& p) const {
  for (const auto& e : entries)
    if (e.first.same(d, p)) return e.second;
  return rat(0);
}

Rat BranchSlopes::laplacian() const {
  Rat s(0);
  for (const auto& e : entries) s += e.second;
  return s;
}

}  // namespace padic
