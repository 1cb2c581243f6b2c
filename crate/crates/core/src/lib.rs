pub mod catalog;
pub mod complex;
pub mod gog;
pub mod io;
pub mod normal_forms;
pub mod pquot;
pub mod words;
