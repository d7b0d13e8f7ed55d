pub mod bounds;
pub mod ffpoly;
pub mod io;
pub mod oracle;
pub mod padic;
pub mod primes;
pub mod ring;
pub mod slp;
pub mod solver;
pub mod verify;
