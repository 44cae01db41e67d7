pub mod asymptotics;
pub mod expansion;
pub mod graphoracle;
pub mod numkernel;
pub mod phasescan;
pub mod roots;
