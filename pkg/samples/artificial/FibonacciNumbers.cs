using System;
class Fibonacci
{
    static void Main()
    {
        int a = 0;
        int b = 1;
        while (a <= 100)
        {
            Console.WriteLine(a);
            int c = a + b;
            a = b;
            b = c;
        }
        Console.Write(b);
    }
}
