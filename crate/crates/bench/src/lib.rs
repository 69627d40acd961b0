pub use floercone;
