from opalg.cli import main

main()
