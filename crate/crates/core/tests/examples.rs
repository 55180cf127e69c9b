macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(root_systems, "root_systems.rs", root_systems_example_runs);
example!(affine_weyl_group, "affine_weyl_group.rs", affine_weyl_group_example_runs);
example!(kottwitz, "kottwitz.rs", kottwitz_example_runs);
example!(galois_descent, "galois_descent.rs", galois_descent_example_runs);
example!(double_cosets, "double_cosets.rs", double_cosets_example_runs);
example!(invariant_suite, "invariant_suite.rs", invariant_suite_example_runs);
