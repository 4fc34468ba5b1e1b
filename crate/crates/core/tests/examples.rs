// Runs every example's `main` so the examples stay working.

trait Outcome {
    fn check(self);
}

impl Outcome for () {
    fn check(self) {}
}

impl<E: std::fmt::Debug> Outcome for Result<(), E> {
    fn check(self) {
        self.unwrap();
    }
}

macro_rules! example {
    ($name:ident) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                super::Outcome::check(main());
            }
        }
    };
}

example!(hello_world);
example!(terms);
example!(zoo_queries);
example!(query_builder);
example!(clause_builder);
example!(family_rules);
example!(conversion);
example!(scripting);
example!(operators);
example!(persist_consult);
example!(benchmark);
example!(logging);
