//! Float math shims so the crate builds without `std`.

pub(crate) trait FloatExt {
    fn sqrt_(self) -> f64;
    fn abs_(self) -> f64;
    fn powf_(self, e: f64) -> f64;
    fn floor_(self) -> f64;
    fn ceil_(self) -> f64;
    fn round_(self) -> f64;
    fn hypot_(self, other: f64) -> f64;
    fn sin_(self) -> f64;
    fn cos_(self) -> f64;
}

impl FloatExt for f64 {
    #[inline]
    fn sqrt_(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn abs_(self) -> f64 {
        libm::fabs(self)
    }
    #[inline]
    fn powf_(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
    #[inline]
    fn floor_(self) -> f64 {
        libm::floor(self)
    }
    #[inline]
    fn ceil_(self) -> f64 {
        libm::ceil(self)
    }
    #[inline]
    fn round_(self) -> f64 {
        libm::round(self)
    }
    #[inline]
    fn hypot_(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
    #[inline]
    fn sin_(self) -> f64 {
        libm::sin(self)
    }
    #[inline]
    fn cos_(self) -> f64 {
        libm::cos(self)
    }
}
