//! C ABI surface; filled in once the core pipeline exists.
