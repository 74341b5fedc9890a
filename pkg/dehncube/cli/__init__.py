from dehncube.cli import higher_maps, report, selftest, main
