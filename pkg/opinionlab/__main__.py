if __name__ == '__main__':
    from .drivers import main
    # args will be gathered from the command line
    main()
