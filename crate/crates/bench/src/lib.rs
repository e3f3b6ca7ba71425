//! Empty library target; this package only carries the criterion benches
//! in `benches/`.
