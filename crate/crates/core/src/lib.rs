pub mod combicrystal;
pub mod graph;
pub mod limitcrystal;
pub mod qboson;
pub mod qfield;
pub mod superpbw;
pub mod verify;
