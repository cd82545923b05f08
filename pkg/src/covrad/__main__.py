from covrad.cli import main

main()
